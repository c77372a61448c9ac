#pragma once

#include <cstdint>
#include <vector>

#include "relu1d/network.hpp"

namespace relu1d::flows {

enum class Integrator { Euler, Rk4 };

struct TrainConfig {
    double lr = 1e-3;
    long steps = 1000;
    Integrator integrator = Integrator::Euler;
    bool train_a = true, train_b = true, train_c = true;
    double tv_lambda = 0.0;  // canonical flow only: + lambda sign(r) on the radial gradient
    long snapshot_every = 100;
    std::uint64_t seed = 0;

    void validate(bool canonical) const;
};

struct FullGradient {
    std::vector<double> a, b, c;
};

struct CanonicalGradient {
    std::vector<double> r, theta;
};

// Per-neuron diagonal of the change-of-metric P_i relating full-flow and
// canonical-flow velocities: dw_i/dt = -P_i grad_{w_i} L~.
struct MetricMatrix {
    std::vector<double> p_rr;      // (m/alpha)^2 (a^2 + b^2 + c^2)
    std::vector<double> p_thth;    // 1 / (a^2 + b^2)
};

// Exact gradient of the half-sum-of-squares loss, including the 1/alpha(m)
// factor. Activation convention: a_i x_j - b_i >= 0.
FullGradient grad_full(const FullNetwork& net, const SampleSet& data);

// grad_r = (1/m) <sum_active rho_j x~_j, d(theta)>,
// grad_theta = (1/m) r <sum_active rho_j x~_j, t(theta)>.
CanonicalGradient grad_canonical(const CanonicalNetwork& net, const SampleSet& data);

MetricMatrix metric(const FullNetwork& net);

// One integrator step. Masked blocks are bit-identical afterwards.
FullNetwork step(const FullNetwork& net, const SampleSet& data, const TrainConfig& cfg);
CanonicalNetwork step(const CanonicalNetwork& net, const SampleSet& data,
                      const TrainConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> losses;
    std::vector<double> residual_norms;
    std::vector<long> snapshot_steps;
    std::vector<FullNetwork> snapshots;
    std::vector<double> delta_drift;  // max_i |delta_i(t) - delta_i(0)|, full flow
};

struct CanonicalTrajectory {
    std::vector<double> times;
    std::vector<double> losses;
    std::vector<double> residual_norms;
    std::vector<long> snapshot_steps;
    std::vector<CanonicalNetwork> snapshots;
};

Trajectory run(const FullNetwork& net, const SampleSet& data, const TrainConfig& cfg);
CanonicalTrajectory run(const CanonicalNetwork& net, const SampleSet& data,
                        const TrainConfig& cfg);

struct Prop2Report {
    double max_discrepancy = 0.0;       // over all neurons and both components
    std::vector<double> fd_r, fd_theta;       // finite-difference velocities
    std::vector<double> metric_r, metric_theta;  // -P_i grad L~ predictions
};

// Cross-checks the change-of-metric relation: (i) finite difference of
// to_canonical along one tiny full-flow Euler step of size h, against
// (ii) -P_i grad_{w_i} L~ assembled from metric() and grad_canonical().
Prop2Report check_prop2(const FullNetwork& net0, const SampleSet& data, double h = 1e-7);

}  // namespace relu1d::flows
