#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superlase/sweep.hpp"

namespace superlase {

// 17-significant-digit locale-independent float formatting (std::to_chars);
// identical configs must produce byte-identical files.
std::string fmt_g17(double v);

// Fixed sweep CSV schema:
// eta_hz,n_photon,power_w,linewidth_hz_regression,linewidth_hz_analytic,
// linewidth_hz_filter,c_bd,converged,direction
struct SweepCsvRow {
    double eta_hz = 0;
    double n_photon = 0;
    double power_w = 0;
    std::optional<double> linewidth_hz_regression;
    std::optional<double> linewidth_hz_analytic;
    std::optional<double> linewidth_hz_filter;
    std::optional<double> c_bd;
    bool converged = false;
    std::string direction = "up";
};

std::string sweep_csv(const std::vector<SweepCsvRow>& rows);

// Minimal static SVG plots.
struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

// log-log line plot; non-positive coordinates are skipped
std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Series>& series);

// linear-axis line plot
std::string svg_linear(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Series>& series);

// heat map over a log-log grid, colored by log10(value)
struct HeatMap {
    std::vector<double> x;       // ascending
    std::vector<double> y;       // ascending
    std::vector<double> values;  // row-major [iy * x.size() + ix], NaN = empty cell
};
std::string svg_heatmap(const std::string& title, const std::string& xlabel,
                        const std::string& ylabel, const HeatMap& map);

void write_file(const std::string& path, const std::string& content);

}  // namespace superlase
