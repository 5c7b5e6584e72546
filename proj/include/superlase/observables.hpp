#pragma once

#include <optional>
#include <vector>

#include "superlase/params.hpp"
#include "superlase/regression.hpp"
#include "superlase/steady.hpp"
#include "superlase/tlm_model.hpp"

namespace superlase {

// P = hbar * omega_c * kappa * <a^dag a>_s with omega_c = 2 pi c / lambda.
double power_watts(const SteadyState& steady, const PhysicalParams& p);
double power_watts_from_n(double n_photon, double kappa, double wavelength);

enum class PullingChannel { cavity, one_photon, two_photon };

struct PullingReport {
    double value = 0;             // |d delta* / d delta_i|
    double step_used = 0;         // rad/s
    double richardson_error = 0;  // absolute error estimate on `value`
};

// Central-difference pulling coefficient with Richardson step-halving.
// Detuning mapping: cavity dc=+-h; one-photon da=db=+-h/2; two-photon
// da=-db=+-h/2. The lasing offset comes from the tracked regression
// eigenvalue. Requires a zero-detuning lasing point.
PullingReport pulling_coefficient(PullingChannel which, const PhysicalParams& p,
                                  const SteadyState& resonant, double step = 0);

// C_BD = |<sigma_BD>_s| / (<sigma_DD>_s + <sigma_BB>_s)
double coherence_cbd(const SteadyState& steady, const PhysicalParams& p);

struct TlmSweepRow {
    double eta = 0;
    double n_photon = 0;
    double power_w = 0;
    std::optional<double> linewidth;  // rad/s
    bool converged = false;
    TlmState state;
};

OdeSystem make_tlm_system(const TlmParams& p);
struct TlmSteady {
    TlmState state;
    double residual_norm = 0;
    bool converged = false;
    std::string what;
};
TlmSteady find_steady_tlm(const TlmParams& p, const TlmState& init = TlmState::vacuum(),
                          const SteadyTolerances& tol = {});

// Three-level continuation sweep through the same steady/regression pipeline;
// base.eta is overridden by the grid values.
std::vector<TlmSweepRow> tlm_simulate(const TlmParams& base, const std::vector<double>& eta_grid,
                                      bool with_linewidth = true,
                                      const SteadyTolerances& tol = {});

}  // namespace superlase
