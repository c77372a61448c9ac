#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = RELU1D_BIN;

int run_cli(const std::string& args) {
    const int rc = std::system((kBin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string capture(const std::string& args, int* code = nullptr) {
    const fs::path tmp = fs::temp_directory_path() / "relu1d_cli_capture.txt";
    const int rc = std::system((kBin + " " + args + " > " + tmp.string() + " 2>/dev/null").c_str());
    if (code) *code = WEXITSTATUS(rc);
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

const char* kMinimalConfig = R"(
[scenario]
id = minimal
task = SINE
samples = 6

[model]
m = 10
scaling = SQRT_M

[train]
lr = 0.001
steps = 100
snapshot_every = 50
seed = 3

[outputs]
snapshots = true
uv = true
)";

}  // namespace

TEST_CASE("usage errors exit with the config code") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("simulate /nonexistent/config.ini") == 2);
    CHECK(run_cli("preset not_a_preset") == 2);
}

TEST_CASE("malformed configs are rejected with code 2") {
    const fs::path dir = fresh_dir("relu1d_cli_bad");
    write_file(dir / "unknown.ini", std::string(kMinimalConfig) + "\n[train]\nbogus_key = 1\n");
    CHECK(run_cli("simulate " + (dir / "unknown.ini").string()) == 2);
    write_file(dir / "nosection.ini", "lr = 0.1\n");
    CHECK(run_cli("simulate " + (dir / "nosection.ini").string()) == 2);
    write_file(dir / "badnum.ini", std::string(kMinimalConfig) + "\n[train]\nlr = fast\n");
    CHECK(run_cli("simulate " + (dir / "badnum.ini").string()) == 2);
}

TEST_CASE("numerical blow-up exits with code 3") {
    const fs::path dir = fresh_dir("relu1d_cli_blowup");
    // c-only training keeps the flow linear so the oversized step truly diverges
    write_file(dir / "config.ini",
               std::string(kMinimalConfig) +
                   "\n[model]\nscaling = ONE\n[train]\nlr = 1e6\nsteps = 5000\n"
                   "train_a = false\ntrain_b = false\n");
    CHECK(run_cli("simulate " + (dir / "config.ini").string() + " --out " +
                  (dir / "out").string()) == 3);
}

TEST_CASE("minimal scenario emits a complete manifest") {
    const fs::path dir = fresh_dir("relu1d_cli_minimal");
    write_file(dir / "config.ini", kMinimalConfig);
    CHECK(run_cli("simulate " + (dir / "config.ini").string() + " --out " +
                  (dir / "out").string()) == 0);

    const fs::path run_dir = dir / "out" / "minimal_3";
    REQUIRE(fs::exists(run_dir / "manifest.json"));
    const auto manifest = nlohmann::json::parse(slurp(run_dir / "manifest.json"));
    std::set<std::string> listed;
    for (const auto& f : manifest["files"]) listed.insert(f.get<std::string>());
    std::set<std::string> present;
    for (const auto& e : fs::directory_iterator(run_dir)) present.insert(e.path().filename());
    CHECK(listed == present);
    CHECK(present.count("trajectory.csv") == 1);
    CHECK(present.count("uv_0.csv") == 1);
    CHECK(present.count("uv_100.csv") == 1);
    CHECK(present.count("snap_100.json") == 1);
    CHECK(manifest["seed"] == 3);

    // trajectory header contract
    std::ifstream traj(run_dir / "trajectory.csv");
    std::string header;
    std::getline(traj, header);
    CHECK(header == "step,time,loss,residual_norm,max_delta_drift");

    // LF endings only
    const std::string bytes = slurp(run_dir / "trajectory.csv");
    CHECK(bytes.find('\r') == std::string::npos);
}

TEST_CASE("reruns with the same seed are byte-identical") {
    const fs::path dir = fresh_dir("relu1d_cli_determinism");
    write_file(dir / "config.ini", kMinimalConfig);
    REQUIRE(run_cli("simulate " + (dir / "config.ini").string() + " --out " +
                    (dir / "a").string()) == 0);
    REQUIRE(run_cli("simulate " + (dir / "config.ini").string() + " --out " +
                    (dir / "b").string()) == 0);
    int compared = 0;
    for (const auto& e : fs::directory_iterator(dir / "a" / "minimal_3")) {
        if (e.path().extension() != ".csv" && e.path().extension() != ".json") continue;
        if (e.path().filename() == "manifest.json") continue;  // contains wall time
        CHECK(slurp(e.path()) == slurp(dir / "b" / "minimal_3" / e.path().filename()));
        ++compared;
    }
    CHECK(compared >= 5);
}

TEST_CASE("preset list and the figure3 contract") {
    int code = 0;
    const std::string names = capture("preset list", &code);
    CHECK(code == 0);
    for (const char* n : {"figure3_100", "figure3_1000", "figure3_10000", "figure5_minus_inf",
                          "figure5_minus1", "figure5_0", "figure5_1", "figure5_plus_inf",
                          "figure7", "figure9"})
        CHECK(names.find(n) != std::string::npos);

    const fs::path dir = fresh_dir("relu1d_cli_fig3");
    CHECK(run_cli("preset figure3_100 --out " + dir.string()) == 0);
    const fs::path run_dir = dir / "figure3_100_1";
    CHECK(fs::exists(run_dir / "fit_kernel.csv"));
    CHECK(fs::exists(run_dir / "fit_spline.csv"));
    CHECK(fs::exists(run_dir / "compare.json"));
    const auto cmp = nlohmann::json::parse(slurp(run_dir / "compare.json"));
    CHECK(cmp["sup_distance"].get<double>() > 0.0);

    // seed override changes the output directory
    CHECK(run_cli("preset figure3_100 --seed 77 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "figure3_100_77"));
}

TEST_CASE("compare subcommand") {
    const fs::path dir = fresh_dir("relu1d_cli_compare");
    write_file(dir / "a.csv", "x,f\n0,1\n1,2\n");
    write_file(dir / "b.csv", "x,f\n0,1.5\n1,2\n");
    int code = 0;
    const std::string out =
        capture("compare " + (dir / "a.csv").string() + " " + (dir / "b.csv").string(), &code);
    CHECK(code == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(j["sup_distance"].get<double>() == doctest::Approx(0.5));
    // mismatched grids are a config error
    write_file(dir / "c.csv", "x,f\n0,1\n2,2\n");
    CHECK(run_cli("compare " + (dir / "a.csv").string() + " " + (dir / "c.csv").string()) == 2);
}

TEST_CASE("restricted subcommands emit only their artifact") {
    const fs::path dir = fresh_dir("relu1d_cli_restricted");
    write_file(dir / "config.ini", std::string(kMinimalConfig) + R"(
[outputs]
spline_fit = true
kernel_fit = true

[kernel]
source = NETWORK
)");
    CHECK(run_cli("spline " + (dir / "config.ini").string() + " --out " + (dir / "out").string()) ==
          0);
    const fs::path run_dir = dir / "out" / "minimal_3";
    CHECK(fs::exists(run_dir / "fit_spline.csv"));
    CHECK_FALSE(fs::exists(run_dir / "fit_kernel.csv"));
    CHECK_FALSE(fs::exists(run_dir / "trajectory.csv"));

    CHECK(run_cli("kernel " + (dir / "config.ini").string() + " --out " + (dir / "out").string()) ==
          0);
    CHECK(fs::exists(run_dir / "fit_kernel.csv"));
}
