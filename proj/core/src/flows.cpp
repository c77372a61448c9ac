#include "relu1d/flows.hpp"

#include <cmath>

namespace relu1d::flows {

void TrainConfig::validate(bool canonical) const {
    if (!(lr >= 0.0)) throw Error("TrainConfig: lr must be nonnegative");
    if (steps < 0) throw Error("TrainConfig: steps must be nonnegative");
    if (snapshot_every <= 0) throw Error("TrainConfig: snapshot_every must be positive");
    if (!train_a && !train_b && !train_c)
        throw Error("TrainConfig: at least one mask flag must be set");
    if (tv_lambda < 0.0) throw Error("TrainConfig: tv_lambda must be nonnegative");
    if (tv_lambda > 0.0 && !canonical)
        throw Error("TrainConfig: tv_lambda only applies to the canonical flow");
}

FullGradient grad_full(const FullNetwork& net, const SampleSet& data) {
    const std::size_t m = net.m();
    const std::size_t s = data.size();
    const double inv_alpha = 1.0 / alpha_of(net.scaling, m);
    const auto rho = residuals(net, data);

    FullGradient g;
    g.a.assign(m, 0.0);
    g.b.assign(m, 0.0);
    g.c.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double ga = 0.0, gb = 0.0, gc = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            const double pre = net.a[i] * data.xs()[j] - net.b[i];
            if (pre >= 0.0) {
                ga += data.xs()[j] * rho[j];
                gb -= rho[j];
                gc += pre * rho[j];
            }
        }
        g.a[i] = inv_alpha * net.c[i] * ga;
        g.b[i] = inv_alpha * net.c[i] * gb;
        g.c[i] = inv_alpha * gc;
    }
    return g;
}

CanonicalGradient grad_canonical(const CanonicalNetwork& net, const SampleSet& data) {
    const std::size_t m = net.m();
    const std::size_t s = data.size();
    const double inv_m = 1.0 / static_cast<double>(m);
    const auto rho = residuals(net, data);

    CanonicalGradient g;
    g.r.assign(m, 0.0);
    g.theta.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double ct = std::cos(net.theta[i]);
        const double st = std::sin(net.theta[i]);
        double sum0 = 0.0, sum1 = 0.0;  // sum of rho_j x~_j over active samples
        for (std::size_t j = 0; j < s; ++j) {
            if (data.xs()[j] * ct + st >= 0.0) {
                sum0 += rho[j] * data.xs()[j];
                sum1 += rho[j];
            }
        }
        g.r[i] = inv_m * (sum0 * ct + sum1 * st);
        g.theta[i] = inv_m * net.r[i] * (-sum0 * st + sum1 * ct);
    }
    return g;
}

MetricMatrix metric(const FullNetwork& net) {
    const std::size_t m = net.m();
    const double lift = static_cast<double>(m) / alpha_of(net.scaling, m);
    MetricMatrix p;
    p.p_rr.resize(m);
    p.p_thth.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ab2 = net.a[i] * net.a[i] + net.b[i] * net.b[i];
        if (ab2 <= kAZeroTol * kAZeroTol) throw DegenerateNeuron(static_cast<int>(i));
        p.p_rr[i] = lift * lift * (ab2 + net.c[i] * net.c[i]);
        p.p_thth[i] = 1.0 / ab2;
    }
    return p;
}

namespace {

void check_finite(const std::vector<double>& v, long k) {
    for (double x : v)
        if (!std::isfinite(x)) throw NonFiniteState(k);
}

// One descent displacement -lr * grad, mask applied.
FullGradient masked_grad_full(const FullNetwork& z, const SampleSet& data,
                              const TrainConfig& cfg) {
    FullGradient g = grad_full(z, data);
    if (!cfg.train_a) g.a.assign(g.a.size(), 0.0);
    if (!cfg.train_b) g.b.assign(g.b.size(), 0.0);
    if (!cfg.train_c) g.c.assign(g.c.size(), 0.0);
    return g;
}

CanonicalGradient masked_grad_canonical(const CanonicalNetwork& w, const SampleSet& data,
                                        const TrainConfig& cfg) {
    CanonicalGradient g = grad_canonical(w, data);
    if (cfg.tv_lambda > 0.0) {
        for (std::size_t i = 0; i < w.r.size(); ++i) {
            const double sgn = (w.r[i] > 0.0) - (w.r[i] < 0.0);
            g.r[i] += cfg.tv_lambda * sgn;
        }
    }
    // Mask mapping for canonical coordinates: r moves with the outer layer,
    // theta with the inner layer.
    if (!cfg.train_c) g.r.assign(g.r.size(), 0.0);
    if (!cfg.train_a && !cfg.train_b) g.theta.assign(g.theta.size(), 0.0);
    return g;
}

void axpy(std::vector<double>& y, double s, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

}  // namespace

FullNetwork step(const FullNetwork& net, const SampleSet& data, const TrainConfig& cfg) {
    cfg.validate(false);
    FullNetwork z = net;
    if (cfg.integrator == Integrator::Euler) {
        const auto g = masked_grad_full(z, data, cfg);
        axpy(z.a, -cfg.lr, g.a);
        axpy(z.b, -cfg.lr, g.b);
        axpy(z.c, -cfg.lr, g.c);
    } else {
        const auto k1 = masked_grad_full(z, data, cfg);
        FullNetwork z2 = z;
        axpy(z2.a, -0.5 * cfg.lr, k1.a);
        axpy(z2.b, -0.5 * cfg.lr, k1.b);
        axpy(z2.c, -0.5 * cfg.lr, k1.c);
        const auto k2 = masked_grad_full(z2, data, cfg);
        FullNetwork z3 = z;
        axpy(z3.a, -0.5 * cfg.lr, k2.a);
        axpy(z3.b, -0.5 * cfg.lr, k2.b);
        axpy(z3.c, -0.5 * cfg.lr, k2.c);
        const auto k3 = masked_grad_full(z3, data, cfg);
        FullNetwork z4 = z;
        axpy(z4.a, -cfg.lr, k3.a);
        axpy(z4.b, -cfg.lr, k3.b);
        axpy(z4.c, -cfg.lr, k3.c);
        const auto k4 = masked_grad_full(z4, data, cfg);
        const double w = -cfg.lr / 6.0;
        for (std::size_t i = 0; i < z.m(); ++i) {
            z.a[i] += w * (k1.a[i] + 2 * k2.a[i] + 2 * k3.a[i] + k4.a[i]);
            z.b[i] += w * (k1.b[i] + 2 * k2.b[i] + 2 * k3.b[i] + k4.b[i]);
            z.c[i] += w * (k1.c[i] + 2 * k2.c[i] + 2 * k3.c[i] + k4.c[i]);
        }
    }
    check_finite(z.a, 0);
    check_finite(z.b, 0);
    check_finite(z.c, 0);
    return z;
}

CanonicalNetwork step(const CanonicalNetwork& net, const SampleSet& data,
                      const TrainConfig& cfg) {
    cfg.validate(true);
    CanonicalNetwork w = net;
    if (cfg.integrator == Integrator::Euler) {
        const auto g = masked_grad_canonical(w, data, cfg);
        axpy(w.r, -cfg.lr, g.r);
        axpy(w.theta, -cfg.lr, g.theta);
    } else {
        const auto k1 = masked_grad_canonical(w, data, cfg);
        CanonicalNetwork w2 = w;
        axpy(w2.r, -0.5 * cfg.lr, k1.r);
        axpy(w2.theta, -0.5 * cfg.lr, k1.theta);
        const auto k2 = masked_grad_canonical(w2, data, cfg);
        CanonicalNetwork w3 = w;
        axpy(w3.r, -0.5 * cfg.lr, k2.r);
        axpy(w3.theta, -0.5 * cfg.lr, k2.theta);
        const auto k3 = masked_grad_canonical(w3, data, cfg);
        CanonicalNetwork w4 = w;
        axpy(w4.r, -cfg.lr, k3.r);
        axpy(w4.theta, -cfg.lr, k3.theta);
        const auto k4 = masked_grad_canonical(w4, data, cfg);
        const double s = -cfg.lr / 6.0;
        for (std::size_t i = 0; i < w.m(); ++i) {
            w.r[i] += s * (k1.r[i] + 2 * k2.r[i] + 2 * k3.r[i] + k4.r[i]);
            w.theta[i] += s * (k1.theta[i] + 2 * k2.theta[i] + 2 * k3.theta[i] + k4.theta[i]);
        }
    }
    check_finite(w.r, 0);
    check_finite(w.theta, 0);
    return w;
}

namespace {

double linf_norm(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::abs(x));
    return n;
}

double l2_norm(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    return std::sqrt(n);
}

}  // namespace

Trajectory run(const FullNetwork& net, const SampleSet& data, const TrainConfig& cfg) {
    cfg.validate(false);
    Trajectory traj;
    const auto delta0 = invariants(net).delta;
    FullNetwork z = net;
    for (long k = 0; k <= cfg.steps; ++k) {
        const auto rho = residuals(z, data);
        double l = 0.0;
        for (double r : rho) l += r * r;
        traj.times.push_back(static_cast<double>(k) * cfg.lr);
        traj.losses.push_back(0.5 * l);
        traj.residual_norms.push_back(l2_norm(rho));
        const auto d = invariants(z).delta;
        double drift = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            drift = std::max(drift, std::abs(d[i] - delta0[i]));
        traj.delta_drift.push_back(drift);
        if (k % cfg.snapshot_every == 0 || k == cfg.steps) {
            traj.snapshot_steps.push_back(k);
            traj.snapshots.push_back(z);
        }
        if (k == cfg.steps) break;
        try {
            z = step(z, data, cfg);
        } catch (const NonFiniteState&) {
            throw NonFiniteState(k + 1);
        }
    }
    return traj;
}

CanonicalTrajectory run(const CanonicalNetwork& net, const SampleSet& data,
                        const TrainConfig& cfg) {
    cfg.validate(true);
    CanonicalTrajectory traj;
    CanonicalNetwork w = net;
    for (long k = 0; k <= cfg.steps; ++k) {
        const auto rho = residuals(w, data);
        double l = 0.0;
        for (double r : rho) l += r * r;
        traj.times.push_back(static_cast<double>(k) * cfg.lr);
        traj.losses.push_back(0.5 * l);
        traj.residual_norms.push_back(l2_norm(rho));
        if (k % cfg.snapshot_every == 0 || k == cfg.steps) {
            traj.snapshot_steps.push_back(k);
            traj.snapshots.push_back(w);
        }
        if (k == cfg.steps) break;
        try {
            w = step(w, data, cfg);
        } catch (const NonFiniteState&) {
            throw NonFiniteState(k + 1);
        }
    }
    return traj;
}

Prop2Report check_prop2(const FullNetwork& net0, const SampleSet& data, double h) {
    const std::size_t m = net0.m();
    TrainConfig tiny;
    tiny.lr = h;
    tiny.steps = 1;
    tiny.integrator = Integrator::Euler;
    const FullNetwork z1 = step(net0, data, tiny);

    const CanonicalNetwork w0 = to_canonical(net0);
    const CanonicalNetwork w1 = to_canonical(z1);

    const auto g = grad_canonical(w0, data);
    const auto p = metric(net0);

    Prop2Report rep;
    rep.fd_r.resize(m);
    rep.fd_theta.resize(m);
    rep.metric_r.resize(m);
    rep.metric_theta.resize(m);
    constexpr double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < m; ++i) {
        rep.fd_r[i] = (w1.r[i] - w0.r[i]) / h;
        double dth = w1.theta[i] - w0.theta[i];
        if (dth > pi) dth -= 2 * pi;
        if (dth < -pi) dth += 2 * pi;
        rep.fd_theta[i] = dth / h;
        rep.metric_r[i] = -p.p_rr[i] * g.r[i];
        rep.metric_theta[i] = -p.p_thth[i] * g.theta[i];
        const double dr = std::abs(rep.fd_r[i] - rep.metric_r[i]) / (1.0 + std::abs(rep.metric_r[i]));
        const double dt =
            std::abs(rep.fd_theta[i] - rep.metric_theta[i]) / (1.0 + std::abs(rep.metric_theta[i]));
        rep.max_discrepancy = std::max({rep.max_discrepancy, dr, dt});
    }
    return rep;
}

}  // namespace relu1d::flows
