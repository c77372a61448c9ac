#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "relu1d/flows.hpp"
#include "relu1d/kernels.hpp"
#include "relu1d/meanfield.hpp"
#include "relu1d/network.hpp"
#include "relu1d/splines.hpp"

namespace relu1d::io {

// Networks round-trip through JSON:
//   full:      {"m", "scaling", "a", "b", "c"}
//   canonical: {"r", "theta", "delta"}
std::string to_json(const FullNetwork& net);
std::string to_json(const CanonicalNetwork& net, const InvariantVector& delta);
FullNetwork full_from_json(const std::string& text);

std::string to_json(const kernels::KernelFit& fit);

// CSV: '.' decimal separator, header row, LF line endings, %.17g values.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

CsvTable trajectory_table(const flows::Trajectory& traj);
CsvTable trajectory_table(const flows::CanonicalTrajectory& traj);
CsvTable uv_table(const UvState& s);
CsvTable field_table(const std::vector<meanfield::FieldPoint>& grid);
// (x, f) pairs for a fitted function on a grid
CsvTable fit_table(const std::vector<double>& grid, const std::vector<double>& values);
// (x, s(x), s''(x))
CsvTable spline_table(const splines::CubicSpline& sp, const std::vector<double>& grid);

std::string attractors_json(const meanfield::AttractorReport& rep);

std::string format_double(double v);

}  // namespace relu1d::io
