#include "relu1d/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "relu1d/io.hpp"
#include "relu1d/splines.hpp"

namespace relu1d::scenario {

using nlohmann::json;

namespace {
constexpr double kPi = 3.14159265358979323846;

const char* task_name(Task t) {
    switch (t) {
        case Task::SquareWave: return "SQUARE_WAVE";
        case Task::Sine: return "SINE";
        case Task::CustomPoints: return "CUSTOM_POINTS";
    }
    return "?";
}

Task task_from_name(const std::string& s) {
    if (s == "SQUARE_WAVE") return Task::SquareWave;
    if (s == "SINE") return Task::Sine;
    if (s == "CUSTOM_POINTS") return Task::CustomPoints;
    throw ConfigError("unknown task: " + s);
}

const char* init_kind_name(InitKind k) {
    switch (k) {
        case InitKind::Uniform: return "UNIFORM";
        case InitKind::Gaussian: return "GAUSSIAN";
        case InitKind::DeltaTarget: return "DELTA_TARGET";
        case InitKind::KnotUniform: return "KNOT_UNIFORM";
    }
    return "?";
}

InitKind init_kind_from_name(const std::string& s) {
    if (s == "UNIFORM") return InitKind::Uniform;
    if (s == "GAUSSIAN") return InitKind::Gaussian;
    if (s == "DELTA_TARGET") return InitKind::DeltaTarget;
    if (s == "KNOT_UNIFORM") return InitKind::KnotUniform;
    throw ConfigError("unknown init kind: " + s);
}
}  // namespace

void Scenario::validate() const {
    if (id.empty()) throw ConfigError("scenario: id must be nonempty");
    if (task == Task::CustomPoints) {
        if (custom_xs.empty() || custom_xs.size() != custom_ys.size())
            throw ConfigError("scenario: CUSTOM_POINTS needs equal-length nonempty xs/ys");
    } else {
        if (samples < 2) throw ConfigError("scenario: need at least 2 samples");
        if (!(x_min < x_max)) throw ConfigError("scenario: need x_min < x_max");
    }
    if (m == 0) throw ConfigError("scenario: need m >= 1");
    if (init.kind == InitKind::Gaussian &&
        (!(init.a_sigma > 0.0) || !(init.b_sigma > 0.0) || !(init.c_sigma > 0.0)))
        throw ConfigError("scenario: GAUSSIAN init needs positive sigmas");
    if (init.kind == InitKind::KnotUniform && !(init.knot_lo < init.knot_hi))
        throw ConfigError("scenario: KNOT_UNIFORM needs knot_lo < knot_hi");
    try {
        train.validate(false);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (grid.n < 2) throw ConfigError("scenario: grid n must be >= 2");
    if (!grid.auto_hull && !(grid.lo < grid.hi))
        throw ConfigError("scenario: grid needs lo < hi");
    if (outputs.compare && !(outputs.kernel_fit && outputs.spline_fit))
        throw ConfigError("scenario: compare requires kernel_fit and spline_fit");
    if (field.nu < 2 || field.nv < 2) throw ConfigError("scenario: field grid needs nu, nv >= 2");
}

SampleSet make_samples(const Scenario& sc) {
    if (sc.task == Task::CustomPoints) return SampleSet(sc.custom_xs, sc.custom_ys);
    std::vector<double> xs(sc.samples), ys(sc.samples);
    for (std::size_t j = 0; j < sc.samples; ++j) {
        xs[j] = sc.x_min + (sc.x_max - sc.x_min) * static_cast<double>(j) /
                               static_cast<double>(sc.samples - 1);
        const double v = std::sin(2.0 * kPi * xs[j]);
        if (sc.task == Task::Sine) {
            ys[j] = v;
        } else {
            // square wave; sign(0) resolved to +1
            ys[j] = (v < -1e-9) ? -1.0 : 1.0;
        }
    }
    return SampleSet(std::move(xs), std::move(ys));
}

FullNetwork init_network(const Scenario& sc) {
    std::mt19937_64 rng(sc.train.seed);
    FullNetwork net;
    net.scaling = sc.scaling;
    net.a.resize(sc.m);
    net.b.resize(sc.m);
    net.c.resize(sc.m);

    const auto fill_uniform = [&](std::vector<double>& v, double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        for (auto& x : v) x = d(rng);
    };

    switch (sc.init.kind) {
        case InitKind::Uniform:
        case InitKind::DeltaTarget:
            fill_uniform(net.a, sc.init.a_lo, sc.init.a_hi);
            fill_uniform(net.b, sc.init.b_lo, sc.init.b_hi);
            fill_uniform(net.c, sc.init.c_lo, sc.init.c_hi);
            break;
        case InitKind::Gaussian: {
            std::normal_distribution<double> da(0.0, sc.init.a_sigma);
            std::normal_distribution<double> db(0.0, sc.init.b_sigma);
            std::normal_distribution<double> dc(0.0, sc.init.c_sigma);
            for (auto& x : net.a) x = da(rng);
            for (auto& x : net.b) x = db(rng);
            for (auto& x : net.c) x = dc(rng);
            break;
        }
        case InitKind::KnotUniform: {
            std::uniform_real_distribution<double> de(sc.init.knot_lo, sc.init.knot_hi);
            for (std::size_t i = 0; i < sc.m; ++i) {
                net.a[i] = (i % 2 == 0) ? 1.0 : -1.0;
                net.b[i] = net.a[i] * de(rng);
                net.c[i] = 0.0;
            }
            break;
        }
    }

    if (sc.init.kind == InitKind::DeltaTarget) {
        // function-preserving per-neuron rescale (a,b,c) -> (ka, kb, c/k)
        // hitting delta = c^2/k^2 - k^2 (a^2 + b^2)
        const double want = sc.init.delta;
        for (std::size_t i = 0; i < sc.m; ++i) {
            const double A = net.a[i] * net.a[i] + net.b[i] * net.b[i];
            const double C = net.c[i] * net.c[i];
            const double current = C - A;
            if (A <= kAZeroTol * kAZeroTol) {
                if (C == 0.0) {
                    if (want != 0.0) throw UnreachableDelta(static_cast<int>(i), current);
                    continue;
                }
                if (!(want > 0.0)) throw UnreachableDelta(static_cast<int>(i), current);
                net.c[i] /= std::abs(net.c[i]) / std::sqrt(want);
                continue;
            }
            const double k2 = (-want + std::sqrt(want * want + 4.0 * A * C)) / (2.0 * A);
            if (!(k2 > 0.0)) throw UnreachableDelta(static_cast<int>(i), current);
            const double k = std::sqrt(k2);
            net.a[i] *= k;
            net.b[i] *= k;
            net.c[i] /= k;
        }
    }

    for (std::size_t i = 0; i < sc.m; ++i) {
        net.a[i] *= sc.init.scale_a;
        net.b[i] *= sc.init.scale_b;
        net.c[i] *= sc.init.scale_c;
    }
    return net;
}

// ---------------------------------------------------------------------------
// config text

namespace {

struct Parser {
    std::string origin;
    std::string section;
    long line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
    }

    double num(const std::string& v) const {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) fail("trailing characters in number: " + v);
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("not a number: " + v);
        }
    }

    long integer(const std::string& v) const {
        try {
            std::size_t pos = 0;
            const long x = std::stol(v, &pos);
            if (pos != v.size()) fail("trailing characters in integer: " + v);
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("not an integer: " + v);
        }
    }

    bool boolean(const std::string& v) const {
        if (v == "true") return true;
        if (v == "false") return false;
        fail("not a boolean (true/false): " + v);
    }

    std::vector<double> numbers(const std::string& v) const {
        std::vector<double> out;
        std::stringstream ss(v);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) fail("empty element in list");
            out.push_back(num(cell.substr(b, e - b + 1)));
        }
        if (out.empty()) fail("empty list");
        return out;
    }
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void apply_key(Scenario& sc, Parser& p, const std::string& key, const std::string& value) {
    const std::string& sec = p.section;
    try {
        if (sec == "scenario") {
            if (key == "id") { sc.id = value; return; }
            if (key == "task") { sc.task = task_from_name(value); return; }
            if (key == "samples") { sc.samples = static_cast<std::size_t>(p.integer(value)); return; }
            if (key == "x_min") { sc.x_min = p.num(value); return; }
            if (key == "x_max") { sc.x_max = p.num(value); return; }
            if (key == "custom_xs") { sc.custom_xs = p.numbers(value); return; }
            if (key == "custom_ys") { sc.custom_ys = p.numbers(value); return; }
        } else if (sec == "model") {
            if (key == "m") { sc.m = static_cast<std::size_t>(p.integer(value)); return; }
            if (key == "scaling") { sc.scaling = scaling_from_name(value); return; }
        } else if (sec == "init") {
            if (key == "kind") { sc.init.kind = init_kind_from_name(value); return; }
            if (key == "a_lo") { sc.init.a_lo = p.num(value); return; }
            if (key == "a_hi") { sc.init.a_hi = p.num(value); return; }
            if (key == "b_lo") { sc.init.b_lo = p.num(value); return; }
            if (key == "b_hi") { sc.init.b_hi = p.num(value); return; }
            if (key == "c_lo") { sc.init.c_lo = p.num(value); return; }
            if (key == "c_hi") { sc.init.c_hi = p.num(value); return; }
            if (key == "a_sigma") { sc.init.a_sigma = p.num(value); return; }
            if (key == "b_sigma") { sc.init.b_sigma = p.num(value); return; }
            if (key == "c_sigma") { sc.init.c_sigma = p.num(value); return; }
            if (key == "delta") { sc.init.delta = p.num(value); return; }
            if (key == "knot_lo") { sc.init.knot_lo = p.num(value); return; }
            if (key == "knot_hi") { sc.init.knot_hi = p.num(value); return; }
            if (key == "scale_a") { sc.init.scale_a = p.num(value); return; }
            if (key == "scale_b") { sc.init.scale_b = p.num(value); return; }
            if (key == "scale_c") { sc.init.scale_c = p.num(value); return; }
        } else if (sec == "train") {
            if (key == "lr") { sc.train.lr = p.num(value); return; }
            if (key == "steps") { sc.train.steps = p.integer(value); return; }
            if (key == "integrator") {
                if (value == "EULER") { sc.train.integrator = flows::Integrator::Euler; return; }
                if (value == "RK4") { sc.train.integrator = flows::Integrator::Rk4; return; }
                p.fail("unknown integrator (EULER/RK4): " + value);
            }
            if (key == "train_a") { sc.train.train_a = p.boolean(value); return; }
            if (key == "train_b") { sc.train.train_b = p.boolean(value); return; }
            if (key == "train_c") { sc.train.train_c = p.boolean(value); return; }
            if (key == "tv_lambda") { sc.train.tv_lambda = p.num(value); return; }
            if (key == "snapshot_every") { sc.train.snapshot_every = p.integer(value); return; }
            if (key == "seed") {
                sc.train.seed = static_cast<std::uint64_t>(p.integer(value));
                return;
            }
        } else if (sec == "outputs") {
            if (key == "trajectory") { sc.outputs.trajectory = p.boolean(value); return; }
            if (key == "snapshots") { sc.outputs.snapshots = p.boolean(value); return; }
            if (key == "uv") { sc.outputs.uv = p.boolean(value); return; }
            if (key == "field") { sc.outputs.field = p.boolean(value); return; }
            if (key == "attractors") { sc.outputs.attractors = p.boolean(value); return; }
            if (key == "kernel_fit") { sc.outputs.kernel_fit = p.boolean(value); return; }
            if (key == "spline_fit") { sc.outputs.spline_fit = p.boolean(value); return; }
            if (key == "compare") { sc.outputs.compare = p.boolean(value); return; }
        } else if (sec == "kernel") {
            if (key == "source") {
                if (value == "GRAM") { sc.kernel.from_gram = true; return; }
                if (value == "NETWORK") { sc.kernel.from_gram = false; return; }
                p.fail("unknown kernel source (GRAM/NETWORK): " + value);
            }
            if (key == "kind") { sc.kernel.kind = kernels::kernel_kind_from_name(value); return; }
            if (key == "a0") { sc.kernel.a0 = p.num(value); return; }
            if (key == "k1") { sc.kernel.k1 = p.num(value); return; }
            if (key == "k2") { sc.kernel.k2 = p.num(value); return; }
            if (key == "C") { sc.kernel.c_radial = p.num(value); return; }
            if (key == "ec2") { sc.kernel.ec2 = p.num(value); return; }
            if (key == "jitter") { sc.kernel.jitter = p.num(value); return; }
        } else if (sec == "grid") {
            if (key == "auto") { sc.grid.auto_hull = p.boolean(value); return; }
            if (key == "lo") { sc.grid.lo = p.num(value); return; }
            if (key == "hi") { sc.grid.hi = p.num(value); return; }
            if (key == "n") { sc.grid.n = static_cast<int>(p.integer(value)); return; }
        } else if (sec == "field") {
            if (key == "u_min") { sc.field.u_min = p.num(value); return; }
            if (key == "u_max") { sc.field.u_max = p.num(value); return; }
            if (key == "v_min") { sc.field.v_min = p.num(value); return; }
            if (key == "v_max") { sc.field.v_max = p.num(value); return; }
            if (key == "nu") { sc.field.nu = static_cast<int>(p.integer(value)); return; }
            if (key == "nv") { sc.field.nv = static_cast<int>(p.integer(value)); return; }
        } else {
            p.fail("unknown section [" + sec + "]");
        }
    } catch (const ConfigError& e) {
        // enum parse errors from helpers lack position info; add it
        const std::string msg = e.what();
        if (msg.rfind(p.origin, 0) == 0) throw;
        p.fail(msg);
    }
    p.fail("unknown key '" + key + "' in section [" + sec + "]");
}

}  // namespace

Scenario parse_config_text(const std::string& text, const std::string& origin) {
    Scenario sc;
    Parser p;
    p.origin = origin;
    std::stringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++p.line;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') p.fail("malformed section header: " + raw);
            p.section = trim(line.substr(1, line.size() - 2));
            if (p.section.empty()) p.fail("empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) p.fail("expected key = value: " + raw);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) p.fail("empty key");
        if (p.section.empty()) p.fail("key before any [section]");
        apply_key(sc, p, key, value);
    }
    sc.validate();
    return sc;
}

Scenario parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

std::string to_config_text(const Scenario& sc) {
    std::ostringstream out;
    const auto f = io::format_double;
    const auto b = [](bool v) { return v ? "true" : "false"; };
    out << "[scenario]\n";
    out << "id = " << sc.id << "\n";
    out << "task = " << task_name(sc.task) << "\n";
    if (sc.task == Task::CustomPoints) {
        const auto list = [&](const std::vector<double>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
            return s;
        };
        out << "custom_xs = " << list(sc.custom_xs) << "\n";
        out << "custom_ys = " << list(sc.custom_ys) << "\n";
    } else {
        out << "samples = " << sc.samples << "\n";
        out << "x_min = " << f(sc.x_min) << "\n";
        out << "x_max = " << f(sc.x_max) << "\n";
    }
    out << "\n[model]\n";
    out << "m = " << sc.m << "\n";
    out << "scaling = " << scaling_name(sc.scaling) << "\n";
    out << "\n[init]\n";
    out << "kind = " << init_kind_name(sc.init.kind) << "\n";
    switch (sc.init.kind) {
        case InitKind::Uniform:
        case InitKind::DeltaTarget:
            out << "a_lo = " << f(sc.init.a_lo) << "\na_hi = " << f(sc.init.a_hi) << "\n";
            out << "b_lo = " << f(sc.init.b_lo) << "\nb_hi = " << f(sc.init.b_hi) << "\n";
            out << "c_lo = " << f(sc.init.c_lo) << "\nc_hi = " << f(sc.init.c_hi) << "\n";
            break;
        case InitKind::Gaussian:
            out << "a_sigma = " << f(sc.init.a_sigma) << "\n";
            out << "b_sigma = " << f(sc.init.b_sigma) << "\n";
            out << "c_sigma = " << f(sc.init.c_sigma) << "\n";
            break;
        case InitKind::KnotUniform:
            out << "knot_lo = " << f(sc.init.knot_lo) << "\nknot_hi = " << f(sc.init.knot_hi)
                << "\n";
            break;
    }
    if (sc.init.kind == InitKind::DeltaTarget) out << "delta = " << f(sc.init.delta) << "\n";
    if (sc.init.scale_a != 1.0) out << "scale_a = " << f(sc.init.scale_a) << "\n";
    if (sc.init.scale_b != 1.0) out << "scale_b = " << f(sc.init.scale_b) << "\n";
    if (sc.init.scale_c != 1.0) out << "scale_c = " << f(sc.init.scale_c) << "\n";
    out << "\n[train]\n";
    out << "lr = " << f(sc.train.lr) << "\n";
    out << "steps = " << sc.train.steps << "\n";
    out << "integrator = " << (sc.train.integrator == flows::Integrator::Euler ? "EULER" : "RK4")
        << "\n";
    out << "train_a = " << b(sc.train.train_a) << "\n";
    out << "train_b = " << b(sc.train.train_b) << "\n";
    out << "train_c = " << b(sc.train.train_c) << "\n";
    if (sc.train.tv_lambda != 0.0) out << "tv_lambda = " << f(sc.train.tv_lambda) << "\n";
    out << "snapshot_every = " << sc.train.snapshot_every << "\n";
    out << "seed = " << sc.train.seed << "\n";
    out << "\n[outputs]\n";
    out << "trajectory = " << b(sc.outputs.trajectory) << "\n";
    out << "snapshots = " << b(sc.outputs.snapshots) << "\n";
    out << "uv = " << b(sc.outputs.uv) << "\n";
    out << "field = " << b(sc.outputs.field) << "\n";
    out << "attractors = " << b(sc.outputs.attractors) << "\n";
    out << "kernel_fit = " << b(sc.outputs.kernel_fit) << "\n";
    out << "spline_fit = " << b(sc.outputs.spline_fit) << "\n";
    out << "compare = " << b(sc.outputs.compare) << "\n";
    if (sc.outputs.kernel_fit) {
        out << "\n[kernel]\n";
        out << "source = " << (sc.kernel.from_gram ? "GRAM" : "NETWORK") << "\n";
        if (sc.kernel.from_gram) {
            out << "kind = " << kernels::kernel_kind_name(sc.kernel.kind) << "\n";
            switch (sc.kernel.kind) {
                case kernels::KernelKind::UniformRf:
                case kernels::KernelKind::QuadratureNtk:
                    out << "a0 = " << f(sc.kernel.a0) << "\n";
                    out << "k1 = " << f(sc.kernel.k1) << "\n";
                    out << "k2 = " << f(sc.kernel.k2) << "\n";
                    out << "ec2 = " << f(sc.kernel.ec2) << "\n";
                    break;
                case kernels::KernelKind::RadialRf:
                    out << "C = " << f(sc.kernel.c_radial) << "\n";
                    break;
                default: break;
            }
            out << "jitter = " << f(sc.kernel.jitter) << "\n";
        }
    }
    out << "\n[grid]\n";
    out << "auto = " << b(sc.grid.auto_hull) << "\n";
    if (!sc.grid.auto_hull) {
        out << "lo = " << f(sc.grid.lo) << "\n";
        out << "hi = " << f(sc.grid.hi) << "\n";
    }
    out << "n = " << sc.grid.n << "\n";
    if (sc.outputs.field) {
        out << "\n[field]\n";
        out << "u_min = " << f(sc.field.u_min) << "\nu_max = " << f(sc.field.u_max) << "\n";
        out << "v_min = " << f(sc.field.v_min) << "\nv_max = " << f(sc.field.v_max) << "\n";
        out << "nu = " << sc.field.nu << "\nnv = " << sc.field.nv << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// presets

namespace {

Scenario base_sine(std::size_t m) {
    Scenario sc;
    sc.task = Task::Sine;
    sc.samples = 10;
    sc.x_min = -1.0;
    sc.x_max = 1.0;
    sc.m = m;
    sc.scaling = Scaling::SqrtM;
    return sc;
}

Scenario preset_figure3(std::size_t m) {
    // kernel-regime fit to a square wave: frozen random knots over the hull
    // extended by 20%, minimal-norm Gram solve, compared to the natural
    // cubic spline
    Scenario sc;
    sc.id = "figure3_" + std::to_string(m);
    sc.task = Task::SquareWave;
    sc.samples = 10;
    sc.x_min = -1.0;
    sc.x_max = 1.0;
    sc.m = m;
    sc.scaling = Scaling::M;
    sc.init.kind = InitKind::KnotUniform;
    sc.init.knot_lo = -1.2;
    sc.init.knot_hi = 1.2;
    sc.train.lr = 0.0;
    sc.train.steps = 0;
    sc.train.train_a = false;
    sc.train.train_b = false;
    sc.train.train_c = true;
    sc.train.seed = 1;
    sc.outputs.kernel_fit = true;
    sc.outputs.spline_fit = true;
    sc.outputs.compare = true;
    sc.kernel.from_gram = true;
    sc.kernel.kind = kernels::KernelKind::EmpiricalRf;
    return sc;
}

Scenario preset_figure5(const std::string& tag) {
    Scenario sc = base_sine(1000);
    sc.id = "figure5_" + tag;
    sc.train.lr = 1e-3;
    sc.train.steps = 10000;
    sc.train.snapshot_every = 2000;
    sc.train.seed = 5;
    sc.outputs.snapshots = true;
    sc.outputs.uv = true;
    if (tag == "minus_inf") {
        // kernel regime: knots frozen, outer layer only
        sc.train.train_a = false;
        sc.train.train_b = false;
        sc.train.lr = 0.05;
    } else if (tag == "plus_inf") {
        // adaptive regime: dominant outer layer frozen, knots move
        sc.init.a_lo = -0.1;
        sc.init.a_hi = 0.1;
        sc.init.b_lo = -0.1;
        sc.init.b_hi = 0.1;
        sc.train.train_c = false;
        sc.train.lr = 0.1;
    } else {
        sc.init.kind = InitKind::DeltaTarget;
        sc.init.delta = tag == "minus1" ? -1.0 : std::stod(tag);
    }
    return sc;
}

Scenario preset_figure6(const std::string& tag) {
    Scenario sc = preset_figure5(tag);
    sc.id = "figure6_" + tag;
    sc.train.seed = 6;
    sc.train.snapshot_every = 1000;
    return sc;
}

Scenario preset_figure7() {
    // same initial function as the unscaled run, but (1e3 a, 1e3 b, 1e-3 c)
    Scenario sc = base_sine(1000);
    sc.id = "figure7";
    sc.init.a_lo = -0.5;
    sc.init.a_hi = 0.5;
    sc.init.b_lo = -0.5;
    sc.init.b_hi = 0.5;
    sc.init.scale_a = 1e3;
    sc.init.scale_b = 1e3;
    sc.init.scale_c = 1e-3;
    sc.train.lr = 1e-6;
    sc.train.steps = 10000;
    sc.train.snapshot_every = 2000;
    sc.train.seed = 7;
    sc.outputs.snapshots = true;
    return sc;
}

Scenario preset_figure8(std::size_t m) {
    Scenario sc = base_sine(m);
    sc.id = "figure8_" + std::to_string(m);
    sc.scaling = Scaling::M;
    sc.train.lr = 1e-2;
    sc.train.steps = 10000;
    sc.train.snapshot_every = 2000;
    sc.train.seed = 8;
    sc.outputs.uv = true;
    return sc;
}

Scenario preset_figure9() {
    // velocity field of a unit positive charge over the uv plane for a small
    // sample set, with the attractor classification of each sample line
    Scenario sc;
    sc.id = "figure9";
    sc.task = Task::Sine;
    sc.samples = 3;
    sc.x_min = -0.75;
    sc.x_max = 0.75;
    sc.m = 10;
    sc.scaling = Scaling::M;
    sc.init.c_lo = 0.0;
    sc.init.c_hi = 0.0;  // f == 0, so the residual is -y
    sc.train.lr = 0.0;
    sc.train.steps = 0;
    sc.train.seed = 9;
    sc.outputs.trajectory = false;
    sc.outputs.field = true;
    sc.outputs.attractors = true;
    return sc;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"figure3_100",       "figure3_1000",  "figure3_10000", "figure5_minus_inf",
            "figure5_minus1",    "figure5_0",     "figure5_1",     "figure5_plus_inf",
            "figure6_minus_inf", "figure6_plus_inf", "figure7",    "figure8_20",
            "figure8_200",       "figure8_2000",  "figure9"};
}

Scenario preset(const std::string& name) {
    if (name == "figure3_100") return preset_figure3(100);
    if (name == "figure3_1000") return preset_figure3(1000);
    if (name == "figure3_10000") return preset_figure3(10000);
    if (name == "figure5_minus_inf") return preset_figure5("minus_inf");
    if (name == "figure5_minus1") return preset_figure5("minus1");
    if (name == "figure5_0") return preset_figure5("0");
    if (name == "figure5_1") return preset_figure5("1");
    if (name == "figure5_plus_inf") return preset_figure5("plus_inf");
    if (name == "figure6_minus_inf") return preset_figure6("minus_inf");
    if (name == "figure6_plus_inf") return preset_figure6("plus_inf");
    if (name == "figure7") return preset_figure7();
    if (name == "figure8_20") return preset_figure8(20);
    if (name == "figure8_200") return preset_figure8(200);
    if (name == "figure8_2000") return preset_figure8(2000);
    if (name == "figure9") return preset_figure9();
    throw ConfigError("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// runner

RunResult run_scenario(const Scenario& sc, const std::filesystem::path& out_root) {
    sc.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const SampleSet data = make_samples(sc);
    const FullNetwork net0 = init_network(sc);
    const flows::Trajectory traj = flows::run(net0, data, sc.train);

    const std::filesystem::path dir =
        out_root / (sc.id + "_" + std::to_string(sc.train.seed));
    std::filesystem::create_directories(dir);

    RunResult res;
    res.out_dir = dir;
    const auto emit_csv = [&](const std::string& name, const io::CsvTable& t) {
        io::write_csv(dir / name, t);
        res.files.push_back(name);
    };
    const auto emit_text = [&](const std::string& name, const std::string& t) {
        io::write_text(dir / name, t);
        res.files.push_back(name);
    };

    if (sc.outputs.trajectory) emit_csv("trajectory.csv", io::trajectory_table(traj));

    for (std::size_t i = 0; i < traj.snapshot_steps.size(); ++i) {
        const long step = traj.snapshot_steps[i];
        const FullNetwork& net = traj.snapshots[i];
        const std::string tag = std::to_string(step);
        if (sc.outputs.snapshots) emit_text("snap_" + tag + ".json", io::to_json(net));
        if (sc.outputs.uv)
            emit_csv("uv_" + tag + ".csv", io::uv_table(uv_state(to_canonical(net))));
        if (sc.outputs.field || sc.outputs.attractors) {
            const auto rho = residuals(net, data);
            if (sc.outputs.field)
                emit_csv("field_" + tag + ".csv",
                         io::field_table(meanfield::field_grid(rho, data, sc.field)));
            if (sc.outputs.attractors)
                emit_text("attractors_" + tag + ".json",
                          io::attractors_json(meanfield::classify_attractors(rho, data)));
        }
    }

    const double lo = sc.grid.auto_hull ? data.xs().front() : sc.grid.lo;
    const double hi = sc.grid.auto_hull ? data.xs().back() : sc.grid.hi;
    const std::vector<double> grid = splines::linspace(lo, hi, static_cast<std::size_t>(sc.grid.n));
    const FullNetwork& final_net = traj.snapshots.back();

    if (sc.outputs.kernel_fit) {
        std::vector<double> values(grid.size());
        if (sc.kernel.from_gram) {
            kernels::KernelSpec spec;
            spec.kind = sc.kernel.kind;
            spec.net = final_net;
            spec.a0 = sc.kernel.a0;
            spec.k1 = sc.kernel.k1;
            spec.k2 = sc.kernel.k2;
            spec.c_radial = sc.kernel.c_radial;
            spec.ec2 = sc.kernel.ec2;
            const kernels::KernelFit fit = kernels::fit_interpolate(spec, data, sc.kernel.jitter);
            for (std::size_t i = 0; i < grid.size(); ++i) values[i] = predict(fit, grid[i]);
        } else {
            for (std::size_t i = 0; i < grid.size(); ++i) values[i] = eval_full(final_net, grid[i]);
        }
        emit_csv("fit_kernel.csv", io::fit_table(grid, values));
    }

    if (sc.outputs.spline_fit)
        emit_csv("fit_spline.csv", io::spline_table(splines::fit_natural_cubic(data), grid));

    if (sc.outputs.compare)
        emit_text("compare.json", compare_fits(dir / "fit_kernel.csv", dir / "fit_spline.csv"));

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest;
    manifest["id"] = sc.id;
    manifest["seed"] = sc.train.seed;
    manifest["version"] = kVersion;
    manifest["config"] = to_config_text(sc);
    manifest["wall_time_seconds"] = wall;
    std::vector<std::string> files = res.files;
    files.push_back("manifest.json");
    manifest["files"] = files;
    io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    res.files.push_back("manifest.json");
    return res;
}

std::string compare_fits(const std::filesystem::path& a, const std::filesystem::path& b) {
    const io::CsvTable ta = io::read_csv(a);
    const io::CsvTable tb = io::read_csv(b);
    if (ta.header.size() < 2 || tb.header.size() < 2)
        throw ConfigError("compare: need at least (x, f) columns in both files");
    if (ta.rows.size() != tb.rows.size())
        throw ConfigError("compare: row counts differ (" + std::to_string(ta.rows.size()) +
                          " vs " + std::to_string(tb.rows.size()) + ")");
    double sup = 0.0;
    for (std::size_t i = 0; i < ta.rows.size(); ++i) {
        if (std::abs(ta.rows[i][0] - tb.rows[i][0]) > 1e-12)
            throw ConfigError("compare: x grids differ at row " + std::to_string(i + 1));
        sup = std::max(sup, std::abs(ta.rows[i][1] - tb.rows[i][1]));
    }
    json j;
    j["file_a"] = a.string();
    j["file_b"] = b.string();
    j["grid_points"] = ta.rows.size();
    j["sup_distance"] = sup;
    return j.dump(2) + "\n";
}

}  // namespace relu1d::scenario
