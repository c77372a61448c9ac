#include "relu1d/network.hpp"

#include <algorithm>
#include <cmath>

namespace relu1d {

double alpha_of(Scaling s, std::size_t m) {
    switch (s) {
        case Scaling::M: return static_cast<double>(m);
        case Scaling::SqrtM: return std::sqrt(static_cast<double>(m));
        case Scaling::One: return 1.0;
    }
    return 1.0;
}

const char* scaling_name(Scaling s) {
    switch (s) {
        case Scaling::M: return "M";
        case Scaling::SqrtM: return "SQRT_M";
        case Scaling::One: return "ONE";
    }
    return "?";
}

Scaling scaling_from_name(const std::string& name) {
    if (name == "M") return Scaling::M;
    if (name == "SQRT_M") return Scaling::SqrtM;
    if (name == "ONE") return Scaling::One;
    throw ConfigError("unknown scaling: " + name);
}

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty() || xs_.size() != ys_.size())
        throw Error("SampleSet: need equal-length, nonempty xs and ys");
    for (std::size_t j = 1; j < xs_.size(); ++j)
        if (!(xs_[j - 1] < xs_[j]))
            throw Error("SampleSet: xs must be strictly increasing");
}

void FullNetwork::validate() const {
    if (a.empty() || a.size() != b.size() || a.size() != c.size())
        throw Error("FullNetwork: a, b, c must have equal nonzero length");
}

double eval_full(const FullNetwork& net, double x) {
    double acc = 0.0;
    const std::size_t m = net.m();
    for (std::size_t i = 0; i < m; ++i) {
        const double pre = net.a[i] * x - net.b[i];
        if (pre >= 0.0) acc += net.c[i] * pre;
    }
    return acc / alpha_of(net.scaling, m);
}

double eval_canonical(const CanonicalNetwork& net, double x) {
    double acc = 0.0;
    const std::size_t m = net.m();
    for (std::size_t i = 0; i < m; ++i) {
        const double pre = x * std::cos(net.theta[i]) + std::sin(net.theta[i]);
        if (pre >= 0.0) acc += net.r[i] * pre;
    }
    return acc / static_cast<double>(m);
}

CanonicalNetwork to_canonical(const FullNetwork& net) {
    net.validate();
    const std::size_t m = net.m();
    const double lift = static_cast<double>(m) / alpha_of(net.scaling, m);
    CanonicalNetwork w;
    w.r.resize(m);
    w.theta.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double n = std::hypot(net.a[i], net.b[i]);
        if (n <= kAZeroTol) throw DegenerateNeuron(static_cast<int>(i));
        w.r[i] = lift * net.c[i] * n;
        // branch chosen so that d(theta) = (a, -b)/|(a,b)|, hence <x~,d> ~ (a x - b)
        w.theta[i] = wrap_angle(std::atan2(-net.b[i], net.a[i]));
    }
    return w;
}

FullNetwork from_canonical(const CanonicalNetwork& net, const InvariantVector& delta,
                           Scaling scaling) {
    const std::size_t m = net.m();
    if (delta.delta.size() != m) throw Error("from_canonical: delta length mismatch");
    const double unlift = alpha_of(scaling, m) / static_cast<double>(m);
    FullNetwork z;
    z.scaling = scaling;
    z.a.resize(m);
    z.b.resize(m);
    z.c.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double rhat = unlift * net.r[i];  // c * |(a,b)|
        const double d = delta.delta[i];
        const double ct = std::cos(net.theta[i]);
        const double st = std::sin(net.theta[i]);
        if (rhat == 0.0 && d < 0.0) {
            const double n = std::sqrt(-d);
            z.c[i] = 0.0;
            z.a[i] = n * ct;
            z.b[i] = -n * st;
            continue;
        }
        const double c2 = 0.5 * (d + std::sqrt(d * d + 4.0 * rhat * rhat));
        const double c = (net.r[i] < 0.0 ? -1.0 : 1.0) * std::sqrt(c2);
        const double n = (c != 0.0) ? rhat / c : 0.0;  // |(a,b)|, sign-consistent
        z.c[i] = c;
        z.a[i] = n * ct;
        z.b[i] = -n * st;
    }
    return z;
}

InvariantVector invariants(const FullNetwork& net) {
    InvariantVector out;
    out.delta.resize(net.m());
    for (std::size_t i = 0; i < net.m(); ++i)
        out.delta[i] = net.c[i] * net.c[i] - net.a[i] * net.a[i] - net.b[i] * net.b[i];
    return out;
}

KnotList knots(const FullNetwork& net) {
    KnotList out;
    out.knots.resize(net.m());
    for (std::size_t i = 0; i < net.m(); ++i) {
        if (std::abs(net.a[i]) > kAZeroTol) {
            out.knots[i].e = net.b[i] / net.a[i];
            out.knots[i].defined = true;
        }
    }
    return out;
}

UvState uv_state(const CanonicalNetwork& net) {
    UvState s;
    const std::size_t m = net.m();
    s.u.resize(m);
    s.v.resize(m);
    s.eps.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ar = std::abs(net.r[i]);
        s.u[i] = ar * std::cos(net.theta[i]);
        s.v[i] = ar * std::sin(net.theta[i]);
        s.eps[i] = (net.r[i] > 0.0) - (net.r[i] < 0.0);
    }
    return s;
}

namespace {
template <class Net>
double loss_impl(const Net& net, const SampleSet& data, double (*ev)(const Net&, double)) {
    double acc = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double rho = ev(net, data.xs()[j]) - data.ys()[j];
        acc += rho * rho;
    }
    return 0.5 * acc;
}
}  // namespace

double loss(const FullNetwork& net, const SampleSet& data) {
    return loss_impl(net, data, &eval_full);
}
double loss(const CanonicalNetwork& net, const SampleSet& data) {
    return loss_impl(net, data, &eval_canonical);
}

std::vector<double> residuals(const FullNetwork& net, const SampleSet& data) {
    std::vector<double> rho(data.size());
    for (std::size_t j = 0; j < data.size(); ++j)
        rho[j] = eval_full(net, data.xs()[j]) - data.ys()[j];
    return rho;
}

std::vector<double> residuals(const CanonicalNetwork& net, const SampleSet& data) {
    std::vector<double> rho(data.size());
    for (std::size_t j = 0; j < data.size(); ++j)
        rho[j] = eval_canonical(net, data.xs()[j]) - data.ys()[j];
    return rho;
}

}  // namespace relu1d
