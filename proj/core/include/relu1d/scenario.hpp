#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "relu1d/flows.hpp"
#include "relu1d/kernels.hpp"
#include "relu1d/meanfield.hpp"
#include "relu1d/network.hpp"

namespace relu1d::scenario {

inline constexpr const char* kVersion = "0.1.0";

enum class Task { SquareWave, Sine, CustomPoints };
enum class InitKind { Uniform, Gaussian, DeltaTarget, KnotUniform };

// Seeded initializer for (a, b, c). UNIFORM/GAUSSIAN sample iid per layer;
// DELTA_TARGET first samples UNIFORM, then rescales each neuron
// (a,b,c) -> (ka, kb, c/k) to hit the requested invariant delta without
// changing the function; KNOT_UNIFORM puts knots uniformly on [knot_lo,
// knot_hi] with alternating slopes a = +-1 and c = 0 (kernel-regime start).
// scale_{a,b,c} multiply the layers after sampling.
struct InitSpec {
    InitKind kind = InitKind::Uniform;
    double a_lo = -1.0, a_hi = 1.0;
    double b_lo = -1.0, b_hi = 1.0;
    double c_lo = -1.0, c_hi = 1.0;
    double a_sigma = 1.0, b_sigma = 1.0, c_sigma = 1.0;
    double delta = 0.0;
    double knot_lo = -1.0, knot_hi = 1.0;
    double scale_a = 1.0, scale_b = 1.0, scale_c = 1.0;
};

// How fit_kernel.csv is produced: a minimal-norm Gram solve with the given
// spec, or plain evaluation of the trained network.
struct KernelConfig {
    bool from_gram = true;
    kernels::KernelKind kind = kernels::KernelKind::EmpiricalRf;
    double a0 = 1.0, k1 = 0.0, k2 = 1.0;
    double c_radial = 1.0;
    double ec2 = 0.0;
    double jitter = 0.0;
};

struct OutputSpec {
    bool trajectory = true;
    bool snapshots = false;
    bool uv = false;
    bool field = false;
    bool attractors = false;
    bool kernel_fit = false;
    bool spline_fit = false;
    bool compare = false;
};

// x-grid for function exports; defaults to the sample hull.
struct EvalGrid {
    bool auto_hull = true;
    double lo = -1.0, hi = 1.0;
    int n = 401;
};

struct Scenario {
    std::string id = "scenario";

    Task task = Task::Sine;
    std::size_t samples = 10;
    double x_min = -1.0, x_max = 1.0;
    std::vector<double> custom_xs, custom_ys;

    std::size_t m = 100;
    Scaling scaling = Scaling::SqrtM;

    InitSpec init;
    flows::TrainConfig train;
    OutputSpec outputs;
    KernelConfig kernel;
    EvalGrid grid;
    meanfield::GridSpec field;

    void validate() const;
};

SampleSet make_samples(const Scenario& sc);

// Deterministic for a fixed (scenario, seed). Throws UnreachableDelta when a
// DELTA_TARGET rescale has no solution for some neuron.
FullNetwork init_network(const Scenario& sc);

// Strict key/value config with [section] headers; unknown keys or sections
// are errors with line diagnostics.
Scenario parse_config(const std::filesystem::path& path);
Scenario parse_config_text(const std::string& text, const std::string& origin);
std::string to_config_text(const Scenario& sc);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<std::string> files;
};

// Executes the scenario and writes the requested artifacts plus manifest.json
// under out_root/<id>_<seed>/.
RunResult run_scenario(const Scenario& sc, const std::filesystem::path& out_root);

// Sup distance between two fitted-function CSVs on a shared x column;
// returns the comparison report as JSON text.
std::string compare_fits(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace relu1d::scenario
