#pragma once

#include <functional>
#include <vector>

#include "relu1d/network.hpp"

namespace relu1d::splines {

// Natural cubic interpolant: C^2, zero second derivative at both endpoints,
// linear extrapolation outside the sample hull.
struct CubicSpline {
    std::vector<double> xs, ys;
    std::vector<double> m2;  // second derivatives at the breakpoints (m2.front() == m2.back() == 0)
};

// Standard tridiagonal construction on the second derivatives.
// Throws TooFewSamples for s < 2.
CubicSpline fit_natural_cubic(const SampleSet& data);

double eval_spline(const CubicSpline& sp, double x);
double eval_spline_d2(const CubicSpline& sp, double x);

struct ClusterMetric {
    double epsilon = 0.0;
    std::vector<long> per_sample;  // defined knots within epsilon of each sample
    long defined = 0;              // knots with a_i != 0
    double clustered_fraction = 0.0;
};

// Fraction of defined knots e_i = b_i/a_i within eps of some sample.
// eps <= 0 selects the default 0.02 * (x_s - x_1).
ClusterMetric knot_clustering(const FullNetwork& net, const SampleSet& data, double eps = 0.0);

double sup_distance(const std::function<double(double)>& f, const std::function<double(double)>& g,
                    const std::vector<double>& grid);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace relu1d::splines
