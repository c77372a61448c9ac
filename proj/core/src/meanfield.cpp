#include "relu1d/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace relu1d::meanfield {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

inline double circ_dist(double a, double b) {
    double d = std::abs(a - b);
    d = std::fmod(d, kTwoPi);
    return std::min(d, kTwoPi - d);
}

// sum_{j in active} rho_j x~_j
inline std::array<double, 2> region_sum(const Region& reg, const std::vector<double>& rho,
                                        const std::vector<double>& xs) {
    std::array<double, 2> s{0.0, 0.0};
    for (int j : reg.active) {
        s[0] += rho[j] * xs[j];
        s[1] += rho[j];
    }
    return s;
}

inline std::vector<int> brute_active(double theta, const std::vector<double>& xs) {
    std::vector<int> act;
    const double ct = std::cos(theta), st = std::sin(theta);
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (xs[j] * ct + st >= 0.0) act.push_back(static_cast<int>(j));
    return act;
}

}  // namespace

RegionDecomposition::RegionDecomposition(const SampleSet& data) : xs_(data.xs()) {
    const std::size_t s = xs_.size();
    // Boundaries are the zeros of <x~_j, d(theta)> = x_j cos + sin, i.e.
    // theta = -arctan(x_j) and pi - arctan(x_j).
    for (std::size_t j = 0; j < s; ++j) {
        const double phi = std::atan(xs_[j]);
        boundaries_.push_back({wrap_angle(-phi), static_cast<int>(j)});
        boundaries_.push_back({wrap_angle(kPi - phi), static_cast<int>(j)});
    }
    std::sort(boundaries_.begin(), boundaries_.end(),
              [](const Boundary& u, const Boundary& v) { return u.angle < v.angle; });

    const std::size_t n = boundaries_.size();
    regions_.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double lo = boundaries_[t].angle;
        const double hi = (t + 1 < n) ? boundaries_[t + 1].angle : boundaries_[0].angle + kTwoPi;
        regions_[t].lo = lo;
        regions_[t].hi = hi;
        regions_[t].active = brute_active(0.5 * (lo + hi), xs_);
    }
}

int RegionDecomposition::region_of(double theta) const {
    // Activation sets are prefixes {0..j} or suffixes {j..s-1}; match the
    // brute-force set (>= convention) to its region. Evaluating through the
    // same inequality keeps boundary points on the >= side.
    const auto act = brute_active(wrap_angle(theta), xs_);
    for (std::size_t k = 0; k < regions_.size(); ++k)
        if (regions_[k].active == act) return static_cast<int>(k);
    // theta numerically on a boundary may activate the union of both sides;
    // fall back to the arc containing the angle.
    const double t = wrap_angle(theta);
    for (std::size_t k = 0; k < regions_.size(); ++k) {
        if (regions_[k].lo <= t && t < regions_[k].hi) return static_cast<int>(k);
        if (regions_[k].hi > kTwoPi && t < regions_[k].hi - kTwoPi) return static_cast<int>(k);
    }
    return static_cast<int>(regions_.size()) - 1;
}

double RegionDecomposition::boundary_distance(double theta) const {
    const double t = wrap_angle(theta);
    double best = kTwoPi;
    for (const auto& b : boundaries_) best = std::min(best, circ_dist(t, b.angle));
    return best;
}

RegionDecomposition decompose(const SampleSet& data) { return RegionDecomposition(data); }

Velocity velocity(double r, double theta, const std::vector<double>& rho,
                  const RegionDecomposition& decomp, double boundary_tol) {
    const double t = wrap_angle(theta);
    if (decomp.boundary_distance(t) <= boundary_tol) {
        // one-sided values from the arcs on either side of the nearest boundary
        const auto& bs = decomp.boundaries();
        std::size_t nearest = 0;
        double best = kTwoPi;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const double d = circ_dist(t, bs[i].angle);
            if (d < best) { best = d; nearest = i; }
        }
        const std::size_t n = bs.size();
        const Region& below = decomp.regions()[(nearest + n - 1) % n];
        const Region& above = decomp.regions()[nearest];
        const double ct = std::cos(t), st = std::sin(t);
        const auto sb = region_sum(below, rho, decomp.xs());
        const auto sa = region_sum(above, rho, decomp.xs());
        throw BoundaryPoint(-(sb[0] * ct + sb[1] * st), -r * (-sb[0] * st + sb[1] * ct),
                            -(sa[0] * ct + sa[1] * st), -r * (-sa[0] * st + sa[1] * ct));
    }
    Velocity v;
    v.region = decomp.region_of(t);
    const auto s = region_sum(decomp.regions()[v.region], rho, decomp.xs());
    const double ct = std::cos(t), st = std::sin(t);
    v.v_r = -(s[0] * ct + s[1] * st);
    v.v_theta = -r * (-s[0] * st + s[1] * ct);
    return v;
}

VelocityJump jump_at_boundary(double r, double theta, const std::vector<double>& rho,
                              const RegionDecomposition& decomp, int j_star) {
    const double t = wrap_angle(theta);
    const double phi = std::atan(decomp.xs()[j_star]);
    const double b1 = wrap_angle(-phi), b2 = wrap_angle(kPi - phi);
    if (circ_dist(t, b1) > 1e-9 && circ_dist(t, b2) > 1e-9)
        throw NotABoundary("theta is not on a boundary of sample " + std::to_string(j_star));
    // The two adjacent active sets differ exactly by sample j*; the jump is
    // the j* term of the velocity, which has no radial component since
    // <x~_j*, d(theta)> = 0 on the boundary.
    VelocityJump jump;
    jump.dv_r = 0.0;
    const double tang = -decomp.xs()[j_star] * std::sin(t) + std::cos(t);  // <x~_j*, t(theta)>
    jump.dv_theta = -r * rho[j_star] * tang;
    return jump;
}

AttractorReport classify_attractors(const std::vector<double>& rho, const SampleSet& data) {
    const std::size_t s = data.size();
    AttractorReport rep;
    rep.flags.assign(s, AttractorFlag::Neither);
    rep.left_sum.assign(s, 0.0);
    rep.right_sum.assign(s, 0.0);
    rep.threshold.assign(s, 0.0);
    for (std::size_t k = 0; k < s; ++k) {
        double left = 0.0, right = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            left += rho[i] * rho[k] * data.lifted_dot(i, k);
        for (std::size_t i = k + 1; i < s; ++i)
            right += rho[i] * rho[k] * data.lifted_dot(i, k);
        const double nk = data.lifted_norm(k);
        const double thr = rho[k] * rho[k] * nk * nk;
        rep.left_sum[k] = left;
        rep.right_sum[k] = right;
        rep.threshold[k] = thr;
        // The tangential velocity flips sign across the sample line exactly
        // when the one-sided sum lies strictly inside (-thr, 0).
        const bool l = left > -thr && left < 0.0;
        const bool r = right > -thr && right < 0.0;
        rep.flags[k] = l && r   ? AttractorFlag::Both
                       : l      ? AttractorFlag::Left
                       : r      ? AttractorFlag::Right
                                : AttractorFlag::Neither;
    }
    return rep;
}

SigmaBlocks sigma_blocks(const CanonicalNetwork& net, const RegionDecomposition& decomp) {
    SigmaBlocks blocks;
    blocks.sigma.assign(decomp.regions().size(), {0.0, 0.0, 0.0, 0.0});
    const std::size_t m = net.m();
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int k = decomp.region_of(net.theta[i]);
        const double ct = std::cos(net.theta[i]), st = std::sin(net.theta[i]);
        const double r2 = net.r[i] * net.r[i];
        auto& sig = blocks.sigma[k];
        // r^2 t t^T + d d^T with d = (ct, st), t = (-st, ct)
        sig[0] += inv_m * (r2 * st * st + ct * ct);
        sig[1] += inv_m * (-r2 * st * ct + ct * st);
        sig[2] += inv_m * (-r2 * ct * st + st * ct);
        sig[3] += inv_m * (r2 * ct * ct + st * st);
    }
    return blocks;
}

std::vector<double> residual_ode_rhs(const std::vector<double>& rho, const SigmaBlocks& sigma,
                                     const RegionDecomposition& decomp, const SampleSet& data) {
    const std::size_t s = data.size();
    std::vector<double> out(s, 0.0);
    const auto& regions = decomp.regions();
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const auto w = region_sum(regions[k], rho, decomp.xs());
        const auto& sig = sigma.sigma[k];
        const double p0 = sig[0] * w[0] + sig[1] * w[1];
        const double p1 = sig[2] * w[0] + sig[3] * w[1];
        // A_k is inside B_j exactly when j is active on A_k
        for (int j : regions[k].active) out[j] -= data.xs()[j] * p0 + p1;
    }
    return out;
}

std::vector<FieldPoint> field_grid(const std::vector<double>& rho, const SampleSet& data,
                                   const GridSpec& spec) {
    const auto decomp = decompose(data);
    std::vector<FieldPoint> grid;
    grid.reserve(static_cast<std::size_t>(spec.nu) * spec.nv);
    for (int iv = 0; iv < spec.nv; ++iv) {
        const double v = spec.nv == 1 ? spec.v_min
                                      : spec.v_min + (spec.v_max - spec.v_min) * iv / (spec.nv - 1);
        for (int iu = 0; iu < spec.nu; ++iu) {
            const double u = spec.nu == 1
                                 ? spec.u_min
                                 : spec.u_min + (spec.u_max - spec.u_min) * iu / (spec.nu - 1);
            FieldPoint p;
            p.u = u;
            p.v = v;
            double best = 1e300;
            for (std::size_t j = 0; j < data.size(); ++j) {
                const double d = std::abs(u * data.xs()[j] + v) / data.lifted_norm(j);
                if (d < best) { best = d; p.nearest_sample = static_cast<int>(j); }
            }
            if (best <= 1e-9) {
                p.skipped = true;
                grid.push_back(p);
                continue;
            }
            const double r = std::hypot(u, v);
            const double theta = wrap_angle(std::atan2(v, u));
            try {
                const Velocity vel = velocity(r, theta, rho, decomp);
                p.region_id = vel.region;
                const double ct = std::cos(theta), st = std::sin(theta);
                p.vu = vel.v_r * ct - vel.v_theta * st;
                p.vv = vel.v_r * st + vel.v_theta * ct;
            } catch (const BoundaryPoint&) {
                p.skipped = true;
            }
            grid.push_back(p);
        }
    }
    return grid;
}

}  // namespace relu1d::meanfield
