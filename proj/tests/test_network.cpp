#include <cmath>
#include <random>

#include "doctest.h"
#include "relu1d/network.hpp"

using namespace relu1d;

namespace {
FullNetwork random_net(std::size_t m, Scaling sc, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FullNetwork z;
    z.scaling = sc;
    z.a.resize(m);
    z.b.resize(m);
    z.c.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        do {
            z.a[i] = u(rng);
            z.b[i] = u(rng);
        } while (std::hypot(z.a[i], z.b[i]) < 1e-3);
        z.c[i] = u(rng);
    }
    return z;
}
}  // namespace

TEST_CASE("scaling factors") {
    CHECK(alpha_of(Scaling::M, 100) == 100.0);
    CHECK(alpha_of(Scaling::SqrtM, 100) == 10.0);
    CHECK(alpha_of(Scaling::One, 100) == 1.0);
    for (auto s : {Scaling::M, Scaling::SqrtM, Scaling::One})
        CHECK(scaling_from_name(scaling_name(s)) == s);
    CHECK_THROWS_AS(scaling_from_name("m"), ConfigError);
}

TEST_CASE("single-neuron evaluation") {
    FullNetwork z;
    z.a = {2.0};
    z.b = {1.0};
    z.c = {3.0};
    z.scaling = Scaling::One;
    CHECK(eval_full(z, 2.0) == doctest::Approx(9.0));   // 3 * [4 - 1]+
    CHECK(eval_full(z, 0.0) == doctest::Approx(0.0));   // inactive
    CHECK(eval_full(z, 0.5) == doctest::Approx(0.0));   // boundary, [0]+ = 0
    z.scaling = Scaling::M;
    CHECK(eval_full(z, 2.0) == doctest::Approx(9.0));   // m = 1, same alpha
}

TEST_CASE("sample set validation") {
    CHECK_THROWS_AS(SampleSet({1.0, 0.0}, {0.0, 0.0}), Error);
    CHECK_THROWS_AS(SampleSet({0.0, 0.0}, {0.0, 0.0}), Error);
    CHECK_THROWS_AS(SampleSet({}, {}), Error);
    SampleSet d({0.0, 2.0}, {1.0, -1.0});
    CHECK(d.lifted_norm(1) == doctest::Approx(std::sqrt(5.0)));
    CHECK(d.lifted_dot(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("canonical map on a hand-computed neuron") {
    FullNetwork z;
    z.a = {1.0};
    z.b = {0.0};
    z.c = {2.0};
    z.scaling = Scaling::One;  // lift m/alpha = 1
    const CanonicalNetwork w = to_canonical(z);
    CHECK(w.r[0] == doctest::Approx(2.0));
    CHECK(w.theta[0] == doctest::Approx(0.0));
    // (a, b) = (0, 1): direction d with <x~, d> prop to (0*x - 1) -> theta = -pi/2
    z.a = {0.0};
    z.b = {1.0};
    const CanonicalNetwork w2 = to_canonical(z);
    CHECK(w2.theta[0] == doctest::Approx(3.0 * 3.14159265358979323846 / 2.0));
}

TEST_CASE("canonical evaluation agrees with the full network") {
    for (auto sc : {Scaling::M, Scaling::SqrtM, Scaling::One}) {
        const FullNetwork z = random_net(17, sc, 42);
        const CanonicalNetwork w = to_canonical(z);
        for (double x : {-1.5, -0.3, 0.0, 0.7, 2.0})
            CHECK(eval_canonical(w, x) == doctest::Approx(eval_full(z, x)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate neuron detection") {
    FullNetwork z;
    z.a = {0.0};
    z.b = {0.0};
    z.c = {1.0};
    CHECK_THROWS_AS(to_canonical(z), DegenerateNeuron);
}

TEST_CASE("invariants") {
    FullNetwork z;
    z.a = {3.0};
    z.b = {4.0};
    z.c = {5.0};
    CHECK(invariants(z).delta[0] == doctest::Approx(0.0));
    z.c = {6.0};
    CHECK(invariants(z).delta[0] == doctest::Approx(11.0));
}

TEST_CASE("round trip through (canonical, invariants) recovers the network") {
    for (auto sc : {Scaling::M, Scaling::SqrtM, Scaling::One}) {
        const FullNetwork z = random_net(25, sc, 7);
        const CanonicalNetwork w = to_canonical(z);
        const InvariantVector d = invariants(z);
        const FullNetwork back = from_canonical(w, d, sc);
        for (std::size_t i = 0; i < z.m(); ++i) {
            CHECK(back.a[i] == doctest::Approx(z.a[i]).epsilon(1e-10));
            CHECK(back.b[i] == doctest::Approx(z.b[i]).epsilon(1e-10));
            CHECK(back.c[i] == doctest::Approx(z.c[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("recovery of a silent neuron (r = 0, delta < 0)") {
    CanonicalNetwork w;
    w.r = {0.0};
    w.theta = {1.2};
    InvariantVector d;
    d.delta = {-4.0};
    const FullNetwork z = from_canonical(w, d, Scaling::One);
    CHECK(z.c[0] == 0.0);
    CHECK(std::hypot(z.a[0], z.b[0]) == doctest::Approx(2.0));
    CHECK(invariants(z).delta[0] == doctest::Approx(-4.0));
    const CanonicalNetwork w2 = to_canonical(z);
    CHECK(w2.theta[0] == doctest::Approx(1.2));
}

TEST_CASE("knots") {
    FullNetwork z;
    z.a = {2.0, 0.0};
    z.b = {1.0, 1.0};
    z.c = {1.0, 1.0};
    const KnotList kl = knots(z);
    CHECK(kl.knots[0].defined);
    CHECK(kl.knots[0].e == doctest::Approx(0.5));
    CHECK_FALSE(kl.knots[1].defined);
}

TEST_CASE("uv state") {
    CanonicalNetwork w;
    w.r = {2.0, -3.0, 0.0};
    w.theta = {0.0, 3.14159265358979323846 / 2.0, 1.0};
    const UvState s = uv_state(w);
    CHECK(s.u[0] == doctest::Approx(2.0));
    CHECK(s.v[0] == doctest::Approx(0.0));
    CHECK(s.eps[0] == 1);
    CHECK(s.u[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.v[1] == doctest::Approx(3.0));
    CHECK(s.eps[1] == -1);
    CHECK(s.eps[2] == 0);
}

TEST_CASE("loss and residuals") {
    FullNetwork z;
    z.a = {1.0};
    z.b = {0.0};
    z.c = {1.0};
    z.scaling = Scaling::One;  // f(x) = [x]+
    SampleSet d({-1.0, 1.0}, {0.0, 0.0});
    const auto rho = residuals(z, d);
    CHECK(rho[0] == doctest::Approx(0.0));
    CHECK(rho[1] == doctest::Approx(1.0));
    CHECK(loss(z, d) == doctest::Approx(0.5));
    CHECK(loss(to_canonical(z), d) == doctest::Approx(0.5));
}

TEST_CASE("wrap_angle") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(-1.0) == doctest::Approx(2.0 * 3.14159265358979323846 - 1.0));
    CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2.0 * 3.14159265358979323846));
    CHECK(wrap_angle(2.0 * 3.14159265358979323846) == 0.0);
}
