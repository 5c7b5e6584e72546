#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "superlase/units.hpp"

namespace superlase {

// Four-level model parameters. All frequencies/rates are angular (rad/s);
// conversion from the linear-Hz user units happens in the config layer.
struct PhysicalParams {
    double n_atoms = 1e5;            // N
    double kappa = 0;                // cavity photon loss
    double gamma0 = 0;               // |x> -> |g>
    double gamma_x = 0;              // |S> -> |x>
    double gamma_p = 0;              // |S> -> |P>
    double eta = 0;                  // incoherent pump |g> -> |S>
    double omega_c_rabi = 0;         // cavity Rabi coupling on |g>-|x>
    double omega_alpha = 0;          // Raman beam alpha, |S>-|x>
    double omega_beta = 0;           // Raman beam beta, |S>-|P>
    double delta_c = 0;              // omega_c - omega_0
    double delta_alpha = 0;          // omega_S - omega_0 - omega_alpha
    double delta_beta = 0;           // omega_S - omega_P - omega_beta
    double lasing_wavelength = 689.449e-9;  // meters, 88Sr 1S0-3P1

    double omega_tilde() const {
        return std::sqrt(omega_alpha * omega_alpha + omega_beta * omega_beta);
    }
    // Gamma = gamma_x + gamma_P + eta
    double big_gamma() const { return gamma_x + gamma_p + eta; }
    // F = eta*Oa^2 + (gamma0+eta)*(eta*Gamma + Ob^2)
    double pump_f() const {
        return eta * omega_alpha * omega_alpha +
               (gamma0 + eta) * (eta * big_gamma() + omega_beta * omega_beta);
    }
    // one-/two-photon detunings: d1 = da + db, d2 = da - db
    double delta_one() const { return delta_alpha + delta_beta; }
    double delta_two() const { return delta_alpha - delta_beta; }

    void validate() const {
        auto nonneg = [](double v, const char* name) {
            if (!(v >= 0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("PhysicalParams: ") + name +
                                            " must be finite and >= 0");
        };
        nonneg(kappa, "kappa");
        nonneg(gamma0, "gamma0");
        nonneg(gamma_x, "gamma_x");
        nonneg(gamma_p, "gamma_p");
        nonneg(eta, "eta");
        nonneg(omega_c_rabi, "omega_c_rabi");
        nonneg(omega_alpha, "omega_alpha");
        nonneg(omega_beta, "omega_beta");
        if (!(n_atoms >= 1))
            throw std::invalid_argument("PhysicalParams: n_atoms must be >= 1");
        if (!(lasing_wavelength > 0))
            throw std::invalid_argument("PhysicalParams: lasing_wavelength must be > 0");
        if (!std::isfinite(delta_c) || !std::isfinite(delta_alpha) || !std::isfinite(delta_beta))
            throw std::invalid_argument("PhysicalParams: detunings must be finite");
    }

    // Reference 88Sr parameter set; everything except the pump and Raman
    // strengths is fixed by the atom and the cavity.
    static PhysicalParams sr88_baseline() {
        PhysicalParams p;
        p.n_atoms = 1e5;
        p.kappa = hz_to_rad(150e3);
        p.gamma0 = hz_to_rad(7.5e3);
        p.gamma_x = hz_to_rad(2.6e6);
        p.gamma_p = hz_to_rad(1.8e6);
        p.omega_c_rabi = hz_to_rad(20e3);
        return p;
    }

    // Split a Raman strength/ratio pair into the two Rabi frequencies.
    void set_raman(double strength, double ratio) {
        const double s = std::sqrt(1.0 + ratio * ratio);
        omega_alpha = strength * ratio / s;
        omega_beta = strength / s;
    }
};

// Reduced three-level model parameters (states g, e, S with e the lasing level).
struct TlmParams {
    double n_atoms = 1e5;
    double kappa = 0;
    double eta = 0;                 // pump |g> -> |S>
    double decay_se = 0;            // |S> -> |e>
    double decay_eg = 0;            // |e> -> |g>
    double cavity_coupling = 0;     // cavity Rabi on |g>-|e>
    double coherent_coupling = 0;   // coherent |S>-|e> coupling (bright TLM only)
    double delta_c = 0;
    double delta_s = 0;             // detuning of the |S> level
    double lasing_wavelength = 689.449e-9;

    double gamma_s_total() const { return decay_se + eta; }

    void validate() const {
        auto nonneg = [](double v, const char* name) {
            if (!(v >= 0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("TlmParams: ") + name +
                                            " must be finite and >= 0");
        };
        nonneg(kappa, "kappa");
        nonneg(eta, "eta");
        nonneg(decay_se, "decay_se");
        nonneg(decay_eg, "decay_eg");
        nonneg(cavity_coupling, "cavity_coupling");
        nonneg(coherent_coupling, "coherent_coupling");
        if (!(n_atoms >= 1))
            throw std::invalid_argument("TlmParams: n_atoms must be >= 1");
    }
};

enum class TlmVariant { dark, bright };

// Project the four-level scheme onto the dark or bright three-level model.
TlmParams tlm_reduce(const PhysicalParams& p, TlmVariant variant);

}  // namespace superlase
