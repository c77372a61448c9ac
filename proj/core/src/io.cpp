#include "relu1d/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace relu1d::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_json(const FullNetwork& net) {
    json j;
    j["m"] = net.m();
    j["scaling"] = scaling_name(net.scaling);
    j["a"] = net.a;
    j["b"] = net.b;
    j["c"] = net.c;
    return j.dump(2) + "\n";
}

std::string to_json(const CanonicalNetwork& net, const InvariantVector& delta) {
    json j;
    j["r"] = net.r;
    j["theta"] = net.theta;
    j["delta"] = delta.delta;
    return j.dump(2) + "\n";
}

FullNetwork full_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("network JSON: ") + e.what());
    }
    FullNetwork net;
    try {
        net.a = j.at("a").get<std::vector<double>>();
        net.b = j.at("b").get<std::vector<double>>();
        net.c = j.at("c").get<std::vector<double>>();
        net.scaling = scaling_from_name(j.at("scaling").get<std::string>());
        if (j.contains("m") && j["m"].get<std::size_t>() != net.a.size())
            throw ConfigError("network JSON: m does not match array lengths");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("network JSON: ") + e.what());
    }
    net.validate();
    return net;
}

std::string to_json(const kernels::KernelFit& fit) {
    json j;
    j["kind"] = kernels::kernel_kind_name(fit.spec.kind);
    json params;
    switch (fit.spec.kind) {
        case kernels::KernelKind::EmpiricalRf:
        case kernels::KernelKind::EmpiricalNtk:
            params["m"] = fit.spec.net.m();
            params["scaling"] = scaling_name(fit.spec.net.scaling);
            break;
        case kernels::KernelKind::UniformRf:
            params["a0"] = fit.spec.a0;
            params["k1"] = fit.spec.k1;
            params["k2"] = fit.spec.k2;
            break;
        case kernels::KernelKind::RadialRf:
            params["C"] = fit.spec.c_radial;
            break;
        case kernels::KernelKind::QuadratureNtk:
            params["radial_base"] = fit.spec.radial_base;
            params["ec2"] = fit.spec.ec2;
            if (fit.spec.radial_base) {
                params["C"] = fit.spec.c_radial;
            } else {
                params["a0"] = fit.spec.a0;
                params["k1"] = fit.spec.k1;
                params["k2"] = fit.spec.k2;
            }
            break;
    }
    j["params"] = params;
    j["alphas"] = fit.alphas;
    j["xs"] = fit.xs;
    j["jitter"] = fit.jitter;
    return j.dump(2) + "\n";
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                                  ": not a number: " + cell);
            }
        }
        if (row.size() != table.header.size())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": wrong number of fields");
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
}

namespace {
template <class Traj>
CsvTable trajectory_common(const Traj& traj, const std::vector<double>* drift) {
    CsvTable t;
    t.header = {"step", "time", "loss", "residual_norm", "max_delta_drift"};
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        t.rows.push_back({static_cast<double>(k), traj.times[k], traj.losses[k],
                          traj.residual_norms[k], drift ? (*drift)[k] : 0.0});
    return t;
}
}  // namespace

CsvTable trajectory_table(const flows::Trajectory& traj) {
    return trajectory_common(traj, &traj.delta_drift);
}

CsvTable trajectory_table(const flows::CanonicalTrajectory& traj) {
    return trajectory_common(traj, nullptr);
}

CsvTable uv_table(const UvState& s) {
    CsvTable t;
    t.header = {"u", "v", "eps"};
    for (std::size_t i = 0; i < s.u.size(); ++i)
        t.rows.push_back({s.u[i], s.v[i], static_cast<double>(s.eps[i])});
    return t;
}

CsvTable field_table(const std::vector<meanfield::FieldPoint>& grid) {
    CsvTable t;
    t.header = {"u", "v", "vu", "vv", "region_id", "nearest_sample", "skipped"};
    for (const auto& p : grid)
        t.rows.push_back({p.u, p.v, p.vu, p.vv, static_cast<double>(p.region_id),
                          static_cast<double>(p.nearest_sample), p.skipped ? 1.0 : 0.0});
    return t;
}

CsvTable fit_table(const std::vector<double>& grid, const std::vector<double>& values) {
    CsvTable t;
    t.header = {"x", "f"};
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], values[i]});
    return t;
}

CsvTable spline_table(const splines::CubicSpline& sp, const std::vector<double>& grid) {
    CsvTable t;
    t.header = {"x", "s", "d2"};
    for (double x : grid) t.rows.push_back({x, splines::eval_spline(sp, x), splines::eval_spline_d2(sp, x)});
    return t;
}

std::string attractors_json(const meanfield::AttractorReport& rep) {
    json j;
    std::vector<std::string> flags;
    for (auto f : rep.flags) {
        switch (f) {
            case meanfield::AttractorFlag::Neither: flags.push_back("NEITHER"); break;
            case meanfield::AttractorFlag::Left: flags.push_back("LEFT"); break;
            case meanfield::AttractorFlag::Right: flags.push_back("RIGHT"); break;
            case meanfield::AttractorFlag::Both: flags.push_back("BOTH"); break;
        }
    }
    j["flags"] = flags;
    j["left_sum"] = rep.left_sum;
    j["right_sum"] = rep.right_sum;
    j["threshold"] = rep.threshold;
    return j.dump(2) + "\n";
}

}  // namespace relu1d::io
