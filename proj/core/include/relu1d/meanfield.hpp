#pragma once

#include <array>
#include <vector>

#include "relu1d/network.hpp"

namespace relu1d::meanfield {

// Angular sector of S^1 on which the activation pattern over the samples is
// constant. active holds the sample indices j with <x~_j, d(theta)> >= 0,
// in increasing order (always a prefix {0..j} or suffix {j..s-1} of samples).
struct Region {
    double lo = 0.0, hi = 0.0;  // arc [lo, hi) in [0, 2*pi + ...), hi may exceed 2*pi for the wrap arc
    std::vector<int> active;
};

struct Boundary {
    double angle = 0.0;
    int sample = -1;  // the sample whose activation flips here
};

class RegionDecomposition {
public:
    explicit RegionDecomposition(const SampleSet& data);

    const std::vector<Region>& regions() const { return regions_; }
    const std::vector<Boundary>& boundaries() const { return boundaries_; }
    const std::vector<double>& xs() const { return xs_; }

    // Region index containing theta (boundaries belong to the arc whose
    // active set contains the flipping sample, matching the >= convention).
    int region_of(double theta) const;

    // Distance (in angle) from theta to the nearest boundary.
    double boundary_distance(double theta) const;

private:
    std::vector<double> xs_;
    std::vector<Region> regions_;
    std::vector<Boundary> boundaries_;
};

RegionDecomposition decompose(const SampleSet& data);

struct Velocity {
    double v_r = 0.0;
    double v_theta = 0.0;
    int region = -1;
};

// Descent velocity -grad V(w; mu) felt by a particle at (r, theta), in
// mean-field time. Throws BoundaryPoint (with one-sided values) when theta
// sits within tol of a region boundary.
Velocity velocity(double r, double theta, const std::vector<double>& rho,
                  const RegionDecomposition& decomp, double boundary_tol = 1e-12);

struct VelocityJump {
    double dv_r = 0.0;      // identically zero
    double dv_theta = 0.0;  // magnitude |r rho_j*| ||x~_j*||
};

// Discontinuity of the velocity field across the boundary of sample j_star.
// theta must lie on one of that sample's two boundary angles.
VelocityJump jump_at_boundary(double r, double theta, const std::vector<double>& rho,
                              const RegionDecomposition& decomp, int j_star);

enum class AttractorFlag { Neither, Left, Right, Both };

struct AttractorReport {
    std::vector<AttractorFlag> flags;
    // Raw one-sided sums L_k = sum_{i<k} rho_i rho_k <x~_i, x~_k> (resp. i>k)
    // and the threshold rho_k^2 ||x~_k||^2. A side is flagged when the sum
    // lies strictly inside (-threshold, 0), i.e. the tangential velocity
    // flips sign across that boundary of the sample line.
    std::vector<double> left_sum, right_sum, threshold;
};

AttractorReport classify_attractors(const std::vector<double>& rho, const SampleSet& data);

// Per-region second moments of the empirical particle measure:
// Sigma_k = (1/m) sum_{i: theta_i in A_k} (r_i^2 t t^T + d d^T).
struct SigmaBlocks {
    // row-major 2x2 per region: [s00, s01, s10, s11]
    std::vector<std::array<double, 4>> sigma;
};

SigmaBlocks sigma_blocks(const CanonicalNetwork& net, const RegionDecomposition& decomp);

// Residual ODE right-hand side in mean-field time:
// rhodot_j = -x~_j^T sum_{k: A_k in B_j} Sigma_k (sum_{j' in C_k} rho_j' x~_j').
// Particle-flow time runs m times slower: rhodot_particle = rhodot / m.
std::vector<double> residual_ode_rhs(const std::vector<double>& rho, const SigmaBlocks& sigma,
                                     const RegionDecomposition& decomp, const SampleSet& data);

struct FieldPoint {
    double u = 0.0, v = 0.0;
    double vu = 0.0, vv = 0.0;
    int region_id = -1;
    int nearest_sample = -1;
    bool skipped = false;  // within 1e-9 of a sample line
};

struct GridSpec {
    double u_min = -2.0, u_max = 2.0;
    double v_min = -2.0, v_max = 2.0;
    int nu = 101, nv = 101;
};

// uv velocity field for a unit positive charge: the velocity at
// (r, theta) = (hypot(u,v), atan2(v,u)) mapped to uv components as
// v_uv = v_r (cos, sin) + v_theta (-sin, cos).
std::vector<FieldPoint> field_grid(const std::vector<double>& rho, const SampleSet& data,
                                   const GridSpec& spec);

}  // namespace relu1d::meanfield
