#include "relu1d/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

namespace relu1d::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Adaptive Simpson on [a, b] with error bound tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const std::vector<double>& xs) {
    const Eigen::Index s = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd k(s, s);
    for (Eigen::Index i = 0; i < s; ++i)
        for (Eigen::Index j = i; j < s; ++j) {
            const double v = kernel(spec, xs[i], xs[j]);
            k(i, j) = v;
            k(j, i) = v;
        }
    return k;
}
}  // namespace

const char* kernel_kind_name(KernelKind k) {
    switch (k) {
        case KernelKind::EmpiricalRf: return "EMPIRICAL_RF";
        case KernelKind::UniformRf: return "UNIFORM_RF";
        case KernelKind::RadialRf: return "RADIAL_RF";
        case KernelKind::EmpiricalNtk: return "EMPIRICAL_NTK";
        case KernelKind::QuadratureNtk: return "QUADRATURE_NTK";
    }
    return "?";
}

KernelKind kernel_kind_from_name(const std::string& name) {
    if (name == "EMPIRICAL_RF") return KernelKind::EmpiricalRf;
    if (name == "UNIFORM_RF") return KernelKind::UniformRf;
    if (name == "RADIAL_RF") return KernelKind::RadialRf;
    if (name == "EMPIRICAL_NTK") return KernelKind::EmpiricalNtk;
    if (name == "QUADRATURE_NTK") return KernelKind::QuadratureNtk;
    throw ConfigError("unknown kernel kind: " + name);
}

void KernelSpec::validate() const {
    if (kind == KernelKind::EmpiricalRf || kind == KernelKind::EmpiricalNtk) net.validate();
    if (kind == KernelKind::UniformRf || (kind == KernelKind::QuadratureNtk && !radial_base)) {
        if (!(k1 < k2)) throw ConfigError("kernel: need k1 < k2");
        if (!(a0 > 0.0)) throw ConfigError("kernel: need a0 > 0");
    }
}

double k_empirical_rf(const FullNetwork& net, double x, double xp) {
    double acc = 0.0;
    const std::size_t m = net.m();
    for (std::size_t i = 0; i < m; ++i) {
        const double p = net.a[i] * x - net.b[i];
        const double q = net.a[i] * xp - net.b[i];
        if (p > 0.0 && q > 0.0) acc += p * q;
    }
    return acc / static_cast<double>(m);
}

double k_uniform_rf(const KernelSpec& spec, double x, double xp) {
    const double hi = std::min({x, xp, spec.k2});
    if (hi <= spec.k1) return 0.0;
    // antiderivative of (x - t)(x' - t): t x x' - t^2 (x + x')/2 + t^3/3
    const auto F = [&](double t) {
        return t * x * xp - 0.5 * t * t * (x + xp) + t * t * t / 3.0;
    };
    return spec.a0 * spec.a0 * (F(hi) - F(spec.k1)) / (spec.k2 - spec.k1);
}

double k_radial_rf(double c_scale, double x, double xp) {
    if (x > xp) std::swap(x, xp);
    const double ax = std::atan(x), axp = std::atan(xp);
    const double t1 = (kPi - axp + ax) * (x * xp + 1.0);
    const double t2 = (x / (1.0 + x * x) - xp / (1.0 + xp * xp)) * (x * xp - 1.0);
    const double t3 =
        (x + xp) * (xp * xp / (1.0 + xp * xp) - x * x / (1.0 + x * x));
    return c_scale / (4.0 * kPi) * (t1 + t2 + t3);
}

double k_empirical_ntk(const FullNetwork& net, double x, double xp) {
    double rf = 0.0, overlap = 0.0;
    const std::size_t m = net.m();
    for (std::size_t i = 0; i < m; ++i) {
        const double p = net.a[i] * x - net.b[i];
        const double q = net.a[i] * xp - net.b[i];
        if (p > 0.0 && q > 0.0) {
            rf += p * q;
            overlap += net.c[i] * net.c[i];
        }
    }
    return (rf + (x * xp + 1.0) * overlap) / static_cast<double>(m);
}

double k_quadrature_ntk(const KernelSpec& spec, double x, double xp) {
    double rf, ind;
    if (spec.radial_base) {
        rf = k_radial_rf(spec.c_radial, x, xp);
        // Indicator of a cos(eta) x + sin(eta) > 0 over the angular marginal:
        // piecewise constant with breakpoints at each sample's two boundary
        // angles; integrate each piece adaptively.
        std::vector<double> cuts{0.0, 2.0 * kPi};
        for (double v : {x, xp}) {
            const double phi = std::atan(v);
            cuts.push_back(wrap_angle(-phi));
            cuts.push_back(wrap_angle(kPi - phi));
        }
        std::sort(cuts.begin(), cuts.end());
        const auto f = [&](double eta) {
            const double g1 = std::cos(eta) * x + std::sin(eta);
            const double g2 = std::cos(eta) * xp + std::sin(eta);
            return (g1 > 0.0 && g2 > 0.0) ? 1.0 : 0.0;
        };
        ind = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            ind += integrate(f, cuts[i], cuts[i + 1], spec.quad_tol / 8.0);
        ind /= 2.0 * kPi;
        if (!std::isfinite(ind)) throw QuadratureNotConverged(spec.quad_tol);
    } else {
        rf = k_uniform_rf(spec, x, xp);
        const double lo = std::min(x, xp);
        ind = (std::clamp(lo, spec.k1, spec.k2) - spec.k1) / (spec.k2 - spec.k1);
    }
    return rf + (x * xp + 1.0) * spec.ec2 * ind;
}

double kernel(const KernelSpec& spec, double x, double xp) {
    switch (spec.kind) {
        case KernelKind::EmpiricalRf: return k_empirical_rf(spec.net, x, xp);
        case KernelKind::UniformRf: return k_uniform_rf(spec, x, xp);
        case KernelKind::RadialRf: return k_radial_rf(spec.c_radial, x, xp);
        case KernelKind::EmpiricalNtk: return k_empirical_ntk(spec.net, x, xp);
        case KernelKind::QuadratureNtk: return k_quadrature_ntk(spec, x, xp);
    }
    return 0.0;
}

std::vector<double> gram(const KernelSpec& spec, const std::vector<double>& xs) {
    const Eigen::MatrixXd k = gram_matrix(spec, xs);
    std::vector<double> out(xs.size() * xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            out[i * xs.size() + j] = k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

KernelFit fit_interpolate(const KernelSpec& spec, const SampleSet& data, double jitter) {
    spec.validate();
    const Eigen::Index s = static_cast<Eigen::Index>(data.size());
    const Eigen::MatrixXd k = gram_matrix(spec, data.xs());
    Eigen::Map<const Eigen::VectorXd> y(data.ys().data(), s);

    const auto solve = [&](double jit) -> std::pair<bool, Eigen::VectorXd> {
        Eigen::MatrixXd kj = k;
        kj.diagonal().array() += jit;
        Eigen::LLT<Eigen::MatrixXd> llt(kj);
        if (llt.info() != Eigen::Success) return {false, {}};
        Eigen::VectorXd alpha = llt.solve(y);
        // reject solutions the factorization silently mangled
        if (((kj * alpha - y).cwiseAbs().maxCoeff()) >
            1e-6 * (1.0 + y.cwiseAbs().maxCoeff()))
            return {false, {}};
        return {true, alpha};
    };

    double used = jitter;
    auto [ok, alpha] = solve(used);
    if (!ok && jitter == 0.0) {
        used = 1e-10 * k.trace() / static_cast<double>(s);
        std::tie(ok, alpha) = solve(used);
    }
    if (!ok) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
        const double lam = es.eigenvalues().minCoeff();
        throw SingularGram("Gram matrix not positive definite (min eigenvalue " +
                               std::to_string(lam) + "); consider raising jitter",
                           lam);
    }

    KernelFit fit;
    fit.alphas.assign(alpha.data(), alpha.data() + s);
    fit.spec = spec;
    fit.xs = data.xs();
    fit.jitter = used;
    return fit;
}

double predict(const KernelFit& fit, double x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < fit.xs.size(); ++j)
        acc += fit.alphas[j] * kernel(fit.spec, fit.xs[j], x);
    return acc;
}

std::vector<double> kernel_flow_residual(const KernelSpec& spec, const SampleSet& data, double t) {
    const Eigen::Index s = static_cast<Eigen::Index>(data.size());
    const Eigen::MatrixXd k = gram_matrix(spec, data.xs());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    if (es.info() != Eigen::Success)
        throw SingularGram("Gram eigendecomposition failed", 0.0);
    Eigen::Map<const Eigen::VectorXd> y(data.ys().data(), s);
    const Eigen::VectorXd decay = (-t * es.eigenvalues().array()).exp();
    const Eigen::VectorXd res =
        -(es.eigenvectors() * (decay.asDiagonal() * (es.eigenvectors().transpose() * y)));
    return {res.data(), res.data() + s};
}

}  // namespace relu1d::kernels
