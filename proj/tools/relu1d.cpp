#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "relu1d/io.hpp"
#include "relu1d/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void report(const relu1d::scenario::RunResult& res) {
    std::cout << "wrote " << res.files.size() << " files to " << res.out_dir.string() << "\n";
}

// keep only the outputs one subcommand is responsible for
enum class Only { All, Kernel, Spline, Field };

void restrict_outputs(relu1d::scenario::Scenario& sc, Only only) {
    if (only == Only::All) return;
    relu1d::scenario::OutputSpec out;
    out.trajectory = false;
    out.kernel_fit = only == Only::Kernel;
    out.spline_fit = only == Only::Spline;
    out.field = only == Only::Field;
    out.attractors = only == Only::Field && sc.outputs.attractors;
    sc.outputs = out;
}

int run(int argc, char** argv) {
    CLI::App app{"gradient dynamics of shallow univariate ReLU networks"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir = "out";
    std::string file_a, file_b;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_config_cmd = [&](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->add_option("config", config_path, "scenario config file")->required();
        cmd->add_option("--out", out_dir, "output root directory");
        return cmd;
    };

    CLI::App* simulate = add_config_cmd("simulate", "run a scenario config end to end");
    CLI::App* kernel = add_config_cmd("kernel", "kernel fit only (fit_kernel.csv)");
    CLI::App* spline = add_config_cmd("spline", "spline fit only (fit_spline.csv)");
    CLI::App* field = add_config_cmd("field", "velocity field only (field_<step>.csv)");

    CLI::App* preset = app.add_subcommand("preset", "run a named built-in experiment");
    preset->add_option("name", preset_name, "preset name; 'list' prints all")->required();
    preset->add_option("--seed", seed, "override the preset seed")->each([&](const std::string&) {
        seed_set = true;
    });
    preset->add_option("--out", out_dir, "output root directory");

    CLI::App* compare = app.add_subcommand("compare", "sup distance between two fit CSVs");
    compare->add_option("fitA", file_a, "first (x, f) CSV")->required();
    compare->add_option("fitB", file_b, "second (x, f) CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    namespace sc = relu1d::scenario;
    if (preset->parsed()) {
        if (preset_name == "list") {
            for (const auto& n : sc::preset_names()) std::cout << n << "\n";
            return 0;
        }
        sc::Scenario s = sc::preset(preset_name);
        if (seed_set) s.train.seed = seed;
        report(sc::run_scenario(s, out_dir));
        return 0;
    }
    if (compare->parsed()) {
        std::cout << sc::compare_fits(file_a, file_b);
        return 0;
    }

    sc::Scenario s = sc::parse_config(config_path);
    if (kernel->parsed()) restrict_outputs(s, Only::Kernel);
    if (spline->parsed()) restrict_outputs(s, Only::Spline);
    if (field->parsed()) restrict_outputs(s, Only::Field);
    (void)simulate;
    report(sc::run_scenario(s, out_dir));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const relu1d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const relu1d::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
