#pragma once

#include <optional>
#include <vector>

#include "superlase/steady.hpp"

namespace superlase {

enum class SweepDirection { up, down };

struct SweepRow {
    double eta = 0;                   // rad/s
    double n_photon = 0;
    double power_w = 0;
    std::optional<double> linewidth;  // rad/s, filled by the caller's enrichment
    std::optional<double> c_bd;
    SweepDirection direction = SweepDirection::up;
    bool converged = false;
    MeanFieldState state;             // converged steady state (valid when converged)
};

// Continuation sweep over the pump grid: each point seeds from the previous
// converged state, the first from the all-ground vacuum. Rows are returned in
// grid order (ascending eta) regardless of traversal direction.
std::vector<SweepRow> sweep_eta(const PhysicalParams& base, const std::vector<double>& eta_grid,
                                SweepDirection direction, const SteadyTolerances& tol = {});

// Photon-number level that separates "lasing" from "off" for threshold logic.
inline constexpr double n_threshold = 10.0;

// Pump values where the steady photon number crosses n_threshold, refined by
// bisection to a relative width of 1e-3 (continuation-seeded solves). Rising
// edges are lower thresholds, falling edges upper thresholds.
std::vector<double> thresholds_from_rows(const PhysicalParams& base,
                                         const std::vector<SweepRow>& rows,
                                         const SteadyTolerances& tol = {});
std::vector<double> find_thresholds(const PhysicalParams& base,
                                    const std::vector<double>& eta_grid,
                                    const SteadyTolerances& tol = {});

// Hysteresis detection rule: up/down branches count as distinct only where
// they differ by more than 10x in photon number. Returns the eta interval
// [first, last] of such points, if any.
std::optional<std::pair<double, double>> hysteresis_interval(const std::vector<SweepRow>& up,
                                                             const std::vector<SweepRow>& down);

// Log-spaced grid helper: points-per-decade spacing, endpoints included.
std::vector<double> log_grid(double lo, double hi, double points_per_decade);

}  // namespace superlase
