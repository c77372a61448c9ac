#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "relu1d/kernels.hpp"

using namespace relu1d;
using namespace relu1d::kernels;

namespace {

// independent quadrature oracle: composite Simpson at fixed resolution
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (b <= a) return 0.0;
    double acc = f(a) + f(b);
    const double h = (b - a) / (2 * n);
    for (int i = 1; i < 2 * n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

FullNetwork mc_gaussian_net(std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    FullNetwork z;
    z.a.resize(m);
    z.b.resize(m);
    z.c.assign(m, 0.0);
    for (auto& x : z.a) x = g(rng);
    for (auto& x : z.b) x = g(rng);
    return z;
}

// standard error of the per-neuron product mean
double mc_stderr(const FullNetwork& z, double x, double xp, double mean) {
    double var = 0.0;
    for (std::size_t i = 0; i < z.m(); ++i) {
        const double p = std::max(z.a[i] * x - z.b[i], 0.0) * std::max(z.a[i] * xp - z.b[i], 0.0);
        var += (p - mean) * (p - mean);
    }
    return std::sqrt(var / static_cast<double>(z.m() - 1) / static_cast<double>(z.m()));
}

}  // namespace

TEST_CASE("empirical RF basics") {
    FullNetwork z;
    z.a = {1.0};
    z.b = {0.0};
    z.c = {1.0};
    CHECK(k_empirical_rf(z, 1.0, 2.0) == doctest::Approx(2.0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const FullNetwork zr = mc_gaussian_net(50, 2);
    for (int t = 0; t < 20; ++t) {
        const double x = u(rng), y = u(rng);
        CHECK(k_empirical_rf(zr, x, y) == doctest::Approx(k_empirical_rf(zr, y, x)).epsilon(1e-12));
    }
}

TEST_CASE("uniform RF closed form against quadrature") {
    KernelSpec spec;
    spec.kind = KernelKind::UniformRf;
    spec.a0 = 1.0;
    spec.k1 = 0.0;
    spec.k2 = 1.0;
    // K(1,1) = int_0^1 (1-t)^2 dt = 1/3
    const double oracle =
        simpson([](double t) { return (1.0 - t) * (1.0 - t); }, 0.0, 1.0, 200);
    CHECK(oracle == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(k_uniform_rf(spec, 1.0, 1.0) == doctest::Approx(oracle).epsilon(1e-12));

    // general pairs against quadrature of (x - t)+(x' - t)+ over the knots
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        const double x = u(rng), y = u(rng);
        const double q = simpson(
            [&](double e) { return std::max(x - e, 0.0) * std::max(y - e, 0.0); }, spec.k1,
            spec.k2, 2000);
        CHECK(k_uniform_rf(spec, x, y) == doctest::Approx(q).epsilon(1e-6));
    }

    // below the knot interval everything is inactive
    CHECK(k_uniform_rf(spec, -0.5, 1.0) == 0.0);
    CHECK(k_uniform_rf(spec, 0.0, 1.0) == 0.0);
}

TEST_CASE("empirical RF converges to the uniform closed form") {
    KernelSpec spec;
    spec.kind = KernelKind::UniformRf;
    spec.a0 = 1.0;
    spec.k1 = 0.0;
    spec.k2 = 1.0;
    double prev = 1e300;
    for (std::size_t m : {100, 1000, 10000, 100000}) {
        std::mt19937_64 rng(97);
        std::uniform_real_distribution<double> uk(0.0, 1.0);
        FullNetwork z;
        z.a.assign(m, 1.0);
        z.b.resize(m);
        z.c.assign(m, 0.0);
        for (auto& b : z.b) b = uk(rng);
        double dev = 0.0, worst_se = 0.0;
        for (double x : {0.1, 0.5, 0.9, 1.5, 2.0})
            for (double y : {0.2, 0.6, 1.0, 1.8}) {
                const double e = k_empirical_rf(z, x, y);
                const double d = std::abs(e - k_uniform_rf(spec, x, y));
                if (d > dev) {
                    dev = d;
                    worst_se = mc_stderr(z, x, y, e);
                }
            }
        CHECK(dev < prev);
        prev = dev;
        if (m == 100000) CHECK(dev <= 4.0 * worst_se);
    }
}

TEST_CASE("radial RF closed form") {
    CHECK(k_radial_rf(2.0, 0.0, 0.0) == doctest::Approx(0.5));   // C/4
    CHECK(k_radial_rf(2.0, 1.0, 1.0) == doctest::Approx(1.0));   // C/2
    CHECK(k_radial_rf(1.0, 0.3, -0.7) == doctest::Approx(k_radial_rf(1.0, -0.7, 0.3)).epsilon(1e-12));

    // Monte-Carlo oracle with standard-normal (a, b); the matching scale is
    // C = 2, fixed empirically by K(0,0) = E[b_+^2] = 1/2
    const FullNetwork z = mc_gaussian_net(100000, 11);
    for (double x : {-1.5, -0.5, 0.0, 0.8, 1.7})
        for (double y : {-1.0, 0.0, 0.4, 1.2, 2.0}) {
            const double e = k_empirical_rf(z, x, y);
            const double se = mc_stderr(z, x, y, e);
            CHECK(std::abs(e - k_radial_rf(2.0, x, y)) <= 4.0 * se);
        }
}

TEST_CASE("empirical NTK") {
    FullNetwork z;
    z.a = {1.0};
    z.b = {0.0};
    z.c = {1.0};
    CHECK(k_empirical_ntk(z, 1.0, 1.0) == doctest::Approx(3.0));  // 1 + 2*1

    // c == 0 reduces to the RF kernel
    FullNetwork z0 = mc_gaussian_net(200, 12);
    CHECK(k_empirical_ntk(z0, 0.4, -0.3) == doctest::Approx(k_empirical_rf(z0, 0.4, -0.3)));

    // decomposition identity, exact arithmetic
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    FullNetwork zc = mc_gaussian_net(100, 14);
    for (auto& c : zc.c) c = g(rng);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        const double x = u(rng), y = u(rng);
        double overlap = 0.0;
        for (std::size_t i = 0; i < zc.m(); ++i)
            if (zc.a[i] * x - zc.b[i] > 0.0 && zc.a[i] * y - zc.b[i] > 0.0)
                overlap += zc.c[i] * zc.c[i];
        const double want = k_empirical_rf(zc, x, y) + (x * y + 1.0) * overlap / zc.m();
        CHECK(std::abs(k_empirical_ntk(zc, x, y) - want) < 1e-12);
    }

    // Gram of an explicit feature map is positive semidefinite
    std::vector<double> xs(20);
    for (auto& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    KernelSpec spec;
    spec.kind = KernelKind::EmpiricalNtk;
    spec.net = zc;
    const auto gm = gram(spec, xs);
    Eigen::MatrixXd k(20, 20);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) k(i, j) = gm[i * 20 + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("quadrature NTK") {
    KernelSpec spec;
    spec.kind = KernelKind::QuadratureNtk;
    spec.a0 = 1.0;
    spec.k1 = 0.0;
    spec.k2 = 1.0;
    spec.ec2 = 0.7;
    // exact overlap at x = x' = 1 is the whole interval
    CHECK(k_quadrature_ntk(spec, 1.0, 1.0) == doctest::Approx(1.0 / 3.0 + 2.0 * 0.7));
    spec.ec2 = 0.0;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const double x = u(rng), y = u(rng);
        CHECK(k_quadrature_ntk(spec, x, y) == doctest::Approx(k_uniform_rf(spec, x, y)));
    }

    // radial base against a 1e5-neuron empirical NTK, within 4 standard errors
    KernelSpec rad;
    rad.kind = KernelKind::QuadratureNtk;
    rad.radial_base = true;
    rad.c_radial = 2.0;
    rad.ec2 = 0.25;
    FullNetwork z = mc_gaussian_net(100000, 22);
    std::uniform_real_distribution<double> uc(-std::sqrt(3.0 * rad.ec2), std::sqrt(3.0 * rad.ec2));
    for (auto& c : z.c) c = uc(rng);  // E[c^2] = 0.25
    for (double x : {-1.0, 0.0, 0.6, 1.5})
        for (double y : {-0.5, 0.3, 1.1}) {
            const double e = k_empirical_ntk(z, x, y);
            // standard error of the NTK per-neuron terms
            double var = 0.0;
            for (std::size_t i = 0; i < z.m(); ++i) {
                const double p = std::max(z.a[i] * x - z.b[i], 0.0) *
                                     std::max(z.a[i] * y - z.b[i], 0.0) +
                                 ((z.a[i] * x - z.b[i] > 0.0 && z.a[i] * y - z.b[i] > 0.0)
                                      ? (x * y + 1.0) * z.c[i] * z.c[i]
                                      : 0.0);
                var += (p - e) * (p - e);
            }
            const double se = std::sqrt(var / (z.m() - 1.0) / z.m());
            CHECK(std::abs(e - k_quadrature_ntk(rad, x, y)) <= 4.0 * se);
        }
}

TEST_CASE("uniform RF is piecewise cubic between the cell boundaries") {
    KernelSpec spec;
    spec.kind = KernelKind::UniformRf;
    spec.a0 = 1.3;
    spec.k1 = -1.0;
    spec.k2 = 1.0;
    const double xp = 0.4;
    // five points strictly inside (k1, min(xp, k2)): fourth divided
    // difference of a cubic vanishes
    const double pts[5] = {-0.9, -0.7, -0.45, -0.2, 0.1};
    double dd[5];
    for (int i = 0; i < 5; ++i) dd[i] = k_uniform_rf(spec, pts[i], xp);
    std::vector<double> xs(pts, pts + 5), fs(dd, dd + 5);
    for (int order = 1; order <= 4; ++order)
        for (int i = 0; i + order < 5; ++i)
            fs[i] = (fs[i + 1] - fs[i]) / (xs[i + order] - xs[i]);
    CHECK(std::abs(fs[0]) < 1e-6 * (1.0 + std::abs(dd[0])));
}

TEST_CASE("interpolation fit") {
    // 1x1 system
    FullNetwork z;
    z.a = {1.0};
    z.b = {-1.0};
    z.c = {1.0};  // K(x1,x1) = [x+1]^2 at x1=1 -> 4
    KernelSpec spec;
    spec.kind = KernelKind::EmpiricalRf;
    spec.net = z;
    SampleSet one({1.0}, {2.0});
    const KernelFit f1 = fit_interpolate(spec, one);
    CHECK(f1.alphas[0] == doctest::Approx(0.5));
    CHECK(predict(f1, 1.0) == doctest::Approx(2.0));

    // training points are reproduced
    spec.net = mc_gaussian_net(300, 31);
    std::vector<double> xs{-1.2, -0.4, 0.1, 0.9, 1.6};
    std::vector<double> ys{0.5, -0.3, 1.0, 0.2, -0.8};
    SampleSet data(xs, ys);
    const KernelFit fit = fit_interpolate(spec, data);
    CHECK(fit.jitter == 0.0);
    for (std::size_t j = 0; j < xs.size(); ++j)
        CHECK(predict(fit, xs[j]) == doctest::Approx(ys[j]).epsilon(1e-8));

    // a kernel that is identically zero on the samples cannot interpolate
    KernelSpec dead;
    dead.kind = KernelKind::UniformRf;
    dead.a0 = 1.0;
    dead.k1 = 5.0;
    dead.k2 = 6.0;
    CHECK_THROWS_AS(fit_interpolate(dead, data), SingularGram);
}

TEST_CASE("gram solves fall back to trace jitter") {
    // two nearly identical samples give a numerically singular Gram
    FullNetwork z = mc_gaussian_net(50, 41);
    KernelSpec spec;
    spec.kind = KernelKind::EmpiricalRf;
    spec.net = z;
    SampleSet data({0.5, 0.5 + 2e-16}, {1.0, 1.0});
    const KernelFit fit = fit_interpolate(spec, data);
    CHECK(fit.jitter > 0.0);
    CHECK(predict(fit, 0.5) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("kernel flow residual") {
    FullNetwork z = mc_gaussian_net(100, 51);
    KernelSpec spec;
    spec.kind = KernelKind::EmpiricalRf;
    spec.net = z;
    std::vector<double> xs{-1.0, -0.2, 0.5, 1.3};
    std::vector<double> ys{1.0, -0.5, 0.7, 0.3};
    SampleSet data(xs, ys);

    const auto r0 = kernel_flow_residual(spec, data, 0.0);
    for (std::size_t j = 0; j < ys.size(); ++j) CHECK(r0[j] == doctest::Approx(-ys[j]));

    // scalar case: residual(t) = -y e^{-kt}
    SampleSet one({1.0}, {2.0});
    const double k = kernel(spec, 1.0, 1.0);
    const auto r1 = kernel_flow_residual(spec, one, 1.0 / k);
    CHECK(r1[0] == doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-10));

    // full-rank decay to zero
    const auto gm = gram(spec, xs);
    Eigen::MatrixXd km(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) km(i, j) = gm[i * 4 + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(km, Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    REQUIRE(lam_min > 0.0);
    const auto rinf = kernel_flow_residual(spec, data, 50.0 / lam_min);
    double ymax = 0.0, rmax = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        ymax = std::max(ymax, std::abs(ys[j]));
        rmax = std::max(rmax, std::abs(rinf[j]));
    }
    CHECK(rmax < 1e-6 * ymax);
}

TEST_CASE("all kernels are symmetric") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    FullNetwork z = mc_gaussian_net(64, 62);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& c : z.c) c = g(rng);
    KernelSpec uni;
    uni.kind = KernelKind::UniformRf;
    uni.k1 = -0.5;
    uni.k2 = 1.5;
    KernelSpec qn = uni;
    qn.kind = KernelKind::QuadratureNtk;
    qn.ec2 = 0.3;
    for (int t = 0; t < 30; ++t) {
        const double x = u(rng), y = u(rng);
        CHECK(std::abs(k_empirical_rf(z, x, y) - k_empirical_rf(z, y, x)) < 1e-12);
        CHECK(std::abs(k_empirical_ntk(z, x, y) - k_empirical_ntk(z, y, x)) < 1e-12);
        CHECK(std::abs(k_uniform_rf(uni, x, y) - k_uniform_rf(uni, y, x)) < 1e-12);
        CHECK(std::abs(k_radial_rf(1.7, x, y) - k_radial_rf(1.7, y, x)) < 1e-12);
        CHECK(std::abs(k_quadrature_ntk(qn, x, y) - k_quadrature_ntk(qn, y, x)) < 1e-12);
    }
}
