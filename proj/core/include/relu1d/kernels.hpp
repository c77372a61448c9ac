#pragma once

#include <string>
#include <vector>

#include "relu1d/network.hpp"

namespace relu1d::kernels {

enum class KernelKind { EmpiricalRf, UniformRf, RadialRf, EmpiricalNtk, QuadratureNtk };

const char* kernel_kind_name(KernelKind k);
KernelKind kernel_kind_from_name(const std::string& name);

// Base measure for the analytic limits: either a0-slope knots uniform on
// [k1, k2], or a radial measure entering only through the scale C.
struct KernelSpec {
    KernelKind kind = KernelKind::EmpiricalRf;

    FullNetwork net;  // EMPIRICAL_*: frozen, never mutated

    double a0 = 1.0;            // UNIFORM_RF (and uniform-base QUADRATURE_NTK)
    double k1 = 0.0, k2 = 1.0;  // knot interval, k1 < k2

    double c_radial = 1.0;      // RADIAL_RF scale C

    bool radial_base = false;   // QUADRATURE_NTK: radial RF part instead of uniform
    double ec2 = 0.0;           // QUADRATURE_NTK: E[c^2]
    double quad_tol = 1e-8;     // QUADRATURE_NTK radial: adaptive-quadrature error bound

    void validate() const;
};

double k_empirical_rf(const FullNetwork& net, double x, double xp);
double k_uniform_rf(const KernelSpec& spec, double x, double xp);
double k_radial_rf(double c_scale, double x, double xp);
// RF part plus the activation-overlap term; indicator uses strict >.
double k_empirical_ntk(const FullNetwork& net, double x, double xp);
// Analytic RF part plus E[c^2] (xx'+1) times the indicator integral: exact
// overlap length for the uniform base, adaptive quadrature for the radial one.
double k_quadrature_ntk(const KernelSpec& spec, double x, double xp);

// Dispatch on spec.kind.
double kernel(const KernelSpec& spec, double x, double xp);

// Gram matrix K(xs_i, xs_j), row-major s x s.
std::vector<double> gram(const KernelSpec& spec, const std::vector<double>& xs);

struct KernelFit {
    std::vector<double> alphas;
    KernelSpec spec;
    std::vector<double> xs;
    double jitter = 0.0;  // jitter actually used (may be the fallback value)
};

// Solves (K + jitter I) alpha = y by SPD factorization. On failure with
// jitter = 0, retries once with 1e-10 * trace / s; if that also fails throws
// SingularGram carrying the smallest Gram eigenvalue.
KernelFit fit_interpolate(const KernelSpec& spec, const SampleSet& data, double jitter = 0.0);

double predict(const KernelFit& fit, double x);

// Residual of kernel gradient flow started from f(0) = 0:
// f(t) - y = -exp(-t K) y, via eigendecomposition of the Gram.
std::vector<double> kernel_flow_residual(const KernelSpec& spec, const SampleSet& data, double t);

}  // namespace relu1d::kernels
