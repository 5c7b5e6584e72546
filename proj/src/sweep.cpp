#include "superlase/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "superlase/observables.hpp"

namespace superlase {

std::vector<double> log_grid(double lo, double hi, double points_per_decade) {
    if (!(lo > 0) || !(hi > lo) || !(points_per_decade >= 1))
        throw std::invalid_argument("log_grid: need 0 < lo < hi and points_per_decade >= 1");
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    g.back() = hi;
    return g;
}

std::vector<SweepRow> sweep_eta(const PhysicalParams& base, const std::vector<double>& eta_grid,
                                SweepDirection direction, const SteadyTolerances& tol) {
    if (!std::is_sorted(eta_grid.begin(), eta_grid.end()))
        throw std::invalid_argument("sweep_eta: eta_grid must be sorted ascending");
    const int n = static_cast<int>(eta_grid.size());
    std::vector<SweepRow> rows(n);

    MeanFieldState seed = MeanFieldState::vacuum();
    for (int k = 0; k < n; ++k) {
        const int i = (direction == SweepDirection::up) ? k : (n - 1 - k);
        PhysicalParams p = base;
        p.eta = eta_grid[i];
        SteadyState ss = find_steady(p, seed, tol);
        SweepRow& row = rows[i];
        row.eta = p.eta;
        row.direction = direction;
        row.converged = ss.converged;
        if (ss.converged) {
            row.state = ss.state;
            row.n_photon = ss.state.n;
            row.power_w = power_watts(ss, p);
            seed = ss.state;
        } else {
            // cold restart so one bad point does not poison the continuation
            seed = MeanFieldState::vacuum();
        }
    }
    return rows;
}

namespace {

double steady_n(const PhysicalParams& base, double eta, const MeanFieldState& seed,
                const SteadyTolerances& tol, MeanFieldState* out_state) {
    PhysicalParams p = base;
    p.eta = eta;
    SteadyState ss = find_steady(p, seed, tol);
    if (!ss.converged) return std::nan("");
    if (out_state) *out_state = ss.state;
    return ss.state.n;
}

}  // namespace

std::vector<double> thresholds_from_rows(const PhysicalParams& base,
                                         const std::vector<SweepRow>& rows,
                                         const SteadyTolerances& tol) {
    std::vector<double> out;
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        const SweepRow& a = rows[i];
        const SweepRow& b = rows[i + 1];
        if (!a.converged || !b.converged) continue;  // unconverged points carry no threshold info
        const bool la = a.n_photon >= n_threshold, lb = b.n_photon >= n_threshold;
        if (la == lb) continue;

        // bisect the bracket, seeding each solve from the matching side
        double lo = a.eta, hi = b.eta;
        MeanFieldState seed_lo = a.state, seed_hi = b.state;
        bool lo_lasing = la;
        while ((hi - lo) > 1e-3 * lo) {
            const double mid = 0.5 * (lo + hi);
            MeanFieldState st;
            const double nm = steady_n(base, mid, lo_lasing ? seed_lo : seed_hi, tol, &st);
            if (std::isnan(nm)) break;  // keep the bracket as-is
            if ((nm >= n_threshold) == lo_lasing) {
                lo = mid;
                seed_lo = st;
            } else {
                hi = mid;
                seed_hi = st;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> find_thresholds(const PhysicalParams& base,
                                    const std::vector<double>& eta_grid,
                                    const SteadyTolerances& tol) {
    return thresholds_from_rows(base, sweep_eta(base, eta_grid, SweepDirection::up, tol), tol);
}

std::optional<std::pair<double, double>> hysteresis_interval(const std::vector<SweepRow>& up,
                                                             const std::vector<SweepRow>& down) {
    if (up.size() != down.size())
        throw std::invalid_argument("hysteresis_interval: mismatched sweeps");
    std::optional<std::pair<double, double>> out;
    for (size_t i = 0; i < up.size(); ++i) {
        if (!up[i].converged || !down[i].converged) continue;
        if (up[i].eta != down[i].eta)
            throw std::invalid_argument("hysteresis_interval: grids differ");
        const double a = std::max(up[i].n_photon, 1e-12);
        const double b = std::max(down[i].n_photon, 1e-12);
        if (std::max(a, b) / std::min(a, b) > 10.0) {
            if (!out)
                out = {up[i].eta, up[i].eta};
            else
                out->second = up[i].eta;
        }
    }
    return out;
}

}  // namespace superlase
