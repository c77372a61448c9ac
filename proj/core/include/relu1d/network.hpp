#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "relu1d/errors.hpp"

namespace relu1d {

// |a| at or below this is treated as zero for knot and direction purposes.
inline constexpr double kAZeroTol = 1e-12;

// Output normalization alpha(m). Stored as an enum so m/alpha(m) is exact.
enum class Scaling { M, SqrtM, One };

double alpha_of(Scaling s, std::size_t m);
const char* scaling_name(Scaling s);
Scaling scaling_from_name(const std::string& name);

// Sorted 1D training set. Lifted points are x~_j = (x_j, 1).
class SampleSet {
public:
    SampleSet(std::vector<double> xs, std::vector<double> ys);

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    std::size_t size() const { return xs_.size(); }

    // ||x~_j||
    double lifted_norm(std::size_t j) const { return std::hypot(xs_[j], 1.0); }
    // <x~_i, x~_j>
    double lifted_dot(std::size_t i, std::size_t j) const { return xs_[i] * xs_[j] + 1.0; }

private:
    std::vector<double> xs_, ys_;
};

// f_z(x) = (1/alpha(m)) sum_i c_i [a_i x - b_i]_+
struct FullNetwork {
    std::vector<double> a, b, c;
    Scaling scaling = Scaling::M;

    std::size_t m() const { return a.size(); }
    void validate() const;
};

// f_w(x) = (1/m) sum_i r_i <x~, d(theta_i)>_+ with d(theta) = (cos, sin)
struct CanonicalNetwork {
    std::vector<double> r, theta;

    std::size_t m() const { return r.size(); }
};

struct InvariantVector {
    std::vector<double> delta;
};

struct Knot {
    double e = 0.0;
    bool defined = false;
};

struct KnotList {
    std::vector<Knot> knots;
};

struct UvState {
    std::vector<double> u, v;
    std::vector<int> eps;  // sign(r_i) in {-1,0,+1}
};

double eval_full(const FullNetwork& net, double x);
double eval_canonical(const CanonicalNetwork& net, double x);

// Throws DegenerateNeuron when a_i^2+b_i^2 is numerically zero.
CanonicalNetwork to_canonical(const FullNetwork& net);

// Inverse of (to_canonical, invariants). sign(c_i) = sign(r_i); when r_i = 0
// and delta_i < 0 the neuron is recovered as c = 0, |(a,b)| = sqrt(-delta).
FullNetwork from_canonical(const CanonicalNetwork& net, const InvariantVector& delta,
                           Scaling scaling);

InvariantVector invariants(const FullNetwork& net);
KnotList knots(const FullNetwork& net);
UvState uv_state(const CanonicalNetwork& net);

double loss(const FullNetwork& net, const SampleSet& data);
double loss(const CanonicalNetwork& net, const SampleSet& data);

// rho_j = f(x_j) - y_j
std::vector<double> residuals(const FullNetwork& net, const SampleSet& data);
std::vector<double> residuals(const CanonicalNetwork& net, const SampleSet& data);

inline double wrap_angle(double t) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    t = std::fmod(t, two_pi);
    if (t < 0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

}  // namespace relu1d
