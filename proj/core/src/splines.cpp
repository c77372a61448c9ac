#include "relu1d/splines.hpp"

#include <algorithm>
#include <cmath>

namespace relu1d::splines {

CubicSpline fit_natural_cubic(const SampleSet& data) {
    const std::size_t s = data.size();
    if (s < 2) throw TooFewSamples("natural cubic spline needs at least 2 samples");
    CubicSpline sp;
    sp.xs = data.xs();
    sp.ys = data.ys();
    sp.m2.assign(s, 0.0);
    if (s == 2) return sp;

    // Tridiagonal system for the interior second derivatives M_1..M_{s-2}:
    // (h_{i-1}/6) M_{i-1} + ((h_{i-1}+h_i)/3) M_i + (h_i/6) M_{i+1}
    //   = (y_{i+1}-y_i)/h_i - (y_i-y_{i-1})/h_{i-1}
    const std::size_t n = s - 2;
    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h0 = sp.xs[i + 1] - sp.xs[i];
        const double h1 = sp.xs[i + 2] - sp.xs[i + 1];
        sub[i] = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        sup[i] = h1 / 6.0;
        rhs[i] = (sp.ys[i + 2] - sp.ys[i + 1]) / h1 - (sp.ys[i + 1] - sp.ys[i]) / h0;
    }
    // Thomas algorithm
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    sp.m2[n] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) sp.m2[i + 1] = (rhs[i] - sup[i] * sp.m2[i + 2]) / diag[i];
    return sp;
}

namespace {
// interval index i with xs[i] <= x < xs[i+1], clamped to the hull
std::size_t interval_of(const CubicSpline& sp, double x) {
    const auto it = std::upper_bound(sp.xs.begin(), sp.xs.end(), x);
    const std::ptrdiff_t i = std::clamp<std::ptrdiff_t>(it - sp.xs.begin() - 1, 0,
                                                        static_cast<std::ptrdiff_t>(sp.xs.size()) - 2);
    return static_cast<std::size_t>(i);
}

double eval_on_interval(const CubicSpline& sp, std::size_t i, double x) {
    const double h = sp.xs[i + 1] - sp.xs[i];
    const double t0 = sp.xs[i + 1] - x, t1 = x - sp.xs[i];
    return sp.m2[i] * t0 * t0 * t0 / (6.0 * h) + sp.m2[i + 1] * t1 * t1 * t1 / (6.0 * h) +
           (sp.ys[i] / h - sp.m2[i] * h / 6.0) * t0 + (sp.ys[i + 1] / h - sp.m2[i + 1] * h / 6.0) * t1;
}

double deriv_on_interval(const CubicSpline& sp, std::size_t i, double x) {
    const double h = sp.xs[i + 1] - sp.xs[i];
    const double t0 = sp.xs[i + 1] - x, t1 = x - sp.xs[i];
    return -sp.m2[i] * t0 * t0 / (2.0 * h) + sp.m2[i + 1] * t1 * t1 / (2.0 * h) -
           (sp.ys[i] / h - sp.m2[i] * h / 6.0) + (sp.ys[i + 1] / h - sp.m2[i + 1] * h / 6.0);
}
}  // namespace

double eval_spline(const CubicSpline& sp, double x) {
    if (x < sp.xs.front())
        return sp.ys.front() + deriv_on_interval(sp, 0, sp.xs.front()) * (x - sp.xs.front());
    if (x > sp.xs.back()) {
        const std::size_t i = sp.xs.size() - 2;
        return sp.ys.back() + deriv_on_interval(sp, i, sp.xs.back()) * (x - sp.xs.back());
    }
    return eval_on_interval(sp, interval_of(sp, x), x);
}

double eval_spline_d2(const CubicSpline& sp, double x) {
    if (x < sp.xs.front() || x > sp.xs.back()) return 0.0;
    const std::size_t i = interval_of(sp, x);
    const double h = sp.xs[i + 1] - sp.xs[i];
    return (sp.m2[i] * (sp.xs[i + 1] - x) + sp.m2[i + 1] * (x - sp.xs[i])) / h;
}

ClusterMetric knot_clustering(const FullNetwork& net, const SampleSet& data, double eps) {
    ClusterMetric out;
    out.epsilon = eps > 0.0 ? eps : 0.02 * (data.xs().back() - data.xs().front());
    out.per_sample.assign(data.size(), 0);
    long clustered = 0;
    const KnotList kl = knots(net);
    for (const Knot& k : kl.knots) {
        if (!k.defined) continue;
        ++out.defined;
        double best = 1e300;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < data.size(); ++j) {
            const double d = std::abs(k.e - data.xs()[j]);
            if (d < best) { best = d; best_j = j; }
        }
        if (best <= out.epsilon) {
            ++clustered;
            ++out.per_sample[best_j];
        }
    }
    out.clustered_fraction = out.defined > 0 ? static_cast<double>(clustered) / out.defined : 0.0;
    return out;
}

double sup_distance(const std::function<double(double)>& f, const std::function<double(double)>& g,
                    const std::vector<double>& grid) {
    double best = 0.0;
    for (double x : grid) best = std::max(best, std::abs(f(x) - g(x)));
    return best;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

}  // namespace relu1d::splines
