#include <benchmark/benchmark.h>

#include <random>

#include "relu1d/flows.hpp"
#include "relu1d/kernels.hpp"
#include "relu1d/meanfield.hpp"
#include "relu1d/splines.hpp"

using namespace relu1d;

namespace {

FullNetwork random_net(std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FullNetwork z;
    z.scaling = Scaling::SqrtM;
    z.a.resize(m);
    z.b.resize(m);
    z.c.resize(m);
    for (auto& x : z.a) x = u(rng);
    for (auto& x : z.b) x = u(rng);
    for (auto& x : z.c) x = u(rng);
    return z;
}

SampleSet sine_data(std::size_t s) {
    std::vector<double> xs(s), ys(s);
    for (std::size_t j = 0; j < s; ++j) {
        xs[j] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(s - 1);
        ys[j] = std::sin(3.0 * xs[j]);
    }
    return SampleSet(std::move(xs), std::move(ys));
}

void bm_eval_full(benchmark::State& state) {
    const FullNetwork z = random_net(static_cast<std::size_t>(state.range(0)), 1);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_full(z, x));
        x += 1e-6;
    }
}
BENCHMARK(bm_eval_full)->Arg(100)->Arg(1000)->Arg(10000);

void bm_grad_full(benchmark::State& state) {
    const FullNetwork z = random_net(static_cast<std::size_t>(state.range(0)), 2);
    const SampleSet data = sine_data(10);
    for (auto _ : state) benchmark::DoNotOptimize(flows::grad_full(z, data));
}
BENCHMARK(bm_grad_full)->Arg(100)->Arg(1000)->Arg(10000);

void bm_euler_step(benchmark::State& state) {
    FullNetwork z = random_net(static_cast<std::size_t>(state.range(0)), 3);
    const SampleSet data = sine_data(10);
    flows::TrainConfig cfg;
    cfg.lr = 1e-4;
    for (auto _ : state) z = flows::step(z, data, cfg);
}
BENCHMARK(bm_euler_step)->Arg(100)->Arg(1000);

void bm_empirical_rf_gram(benchmark::State& state) {
    kernels::KernelSpec spec;
    spec.kind = kernels::KernelKind::EmpiricalRf;
    spec.net = random_net(static_cast<std::size_t>(state.range(0)), 4);
    const SampleSet data = sine_data(20);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::gram(spec, data.xs()));
}
BENCHMARK(bm_empirical_rf_gram)->Arg(100)->Arg(1000)->Arg(10000);

void bm_radial_kernel(benchmark::State& state) {
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::k_radial_rf(2.0, x, 0.3));
        x += 1e-7;
    }
}
BENCHMARK(bm_radial_kernel);

void bm_spline_eval(benchmark::State& state) {
    const SampleSet data = sine_data(static_cast<std::size_t>(state.range(0)));
    const splines::CubicSpline sp = splines::fit_natural_cubic(data);
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(splines::eval_spline(sp, x));
        x += 1e-7;
    }
}
BENCHMARK(bm_spline_eval)->Arg(10)->Arg(100);

void bm_region_decompose(benchmark::State& state) {
    const SampleSet data = sine_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(meanfield::decompose(data));
}
BENCHMARK(bm_region_decompose)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
