#pragma once

#include <stdexcept>
#include <string>

namespace relu1d {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A neuron whose direction (a,b) is numerically zero; the angle is undefined.
struct DegenerateNeuron : Error {
    int neuron;
    explicit DegenerateNeuron(int i)
        : Error("degenerate neuron " + std::to_string(i) + ": a^2+b^2 below tolerance"),
          neuron(i) {}
};

// A parameter became NaN/Inf during integration.
struct NonFiniteState : Error {
    long step;
    explicit NonFiniteState(long k)
        : Error("non-finite parameter at step " + std::to_string(k)), step(k) {}
};

// Velocity queried exactly on a region boundary; carries both one-sided values.
struct BoundaryPoint : Error {
    double left_vr, left_vtheta;
    double right_vr, right_vtheta;
    BoundaryPoint(double lvr, double lvt, double rvr, double rvt)
        : Error("angle lies on a region boundary"),
          left_vr(lvr), left_vtheta(lvt), right_vr(rvr), right_vtheta(rvt) {}
};

struct NotABoundary : Error {
    using Error::Error;
};

struct SingularGram : Error {
    double min_eigenvalue;
    SingularGram(const std::string& msg, double lam)
        : Error(msg), min_eigenvalue(lam) {}
};

struct QuadratureNotConverged : Error {
    double error_bound;
    explicit QuadratureNotConverged(double e)
        : Error("adaptive quadrature error bound " + std::to_string(e) + " exceeds 1e-8"),
          error_bound(e) {}
};

struct TooFewSamples : Error {
    using Error::Error;
};

// Reported (not thrown) when DELTA_TARGET cannot be met for a neuron.
struct UnreachableDelta : Error {
    int neuron;
    double achieved;
    UnreachableDelta(int i, double got)
        : Error("neuron " + std::to_string(i) + ": requested delta unreachable, achieved " +
                std::to_string(got)),
          neuron(i), achieved(got) {}
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace relu1d
