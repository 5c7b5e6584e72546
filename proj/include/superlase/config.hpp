#pragma once

#include <string>

#include "superlase/params.hpp"

namespace superlase {

// Run configuration in user units (linear Hz; lengths in nm). Conversion to
// the angular-frequency PhysicalParams happens in physical_params(), so a
// parse -> emit -> parse round trip is bit-exact on this struct.
struct RunConfig {
    // [atoms]
    double n_atoms = 1e5;
    double gamma_x_hz = 2.6e6;
    double gamma_p_hz = 1.8e6;
    double gamma_0_hz = 7.5e3;
    // [cavity]
    double kappa_hz = 150e3;
    double omega_c_hz = 20e3;
    double delta_c_hz = 0;
    double wavelength_nm = 689.449;
    // [raman] either strength/ratio or the explicit pair (exclusive)
    bool raman_explicit = false;
    double strength_hz = 3.1622776601683795e6;  // sqrt(10) MHz
    double ratio = 3.1622776601683795;
    double omega_alpha_hz = 0;
    double omega_beta_hz = 0;
    double delta_alpha_hz = 0;
    double delta_beta_hz = 0;
    // [pump]
    double eta_hz = 3e3;
    // [sweep]
    double eta_min_hz = 0.3e3;
    double eta_max_hz = 100e6;
    double points_per_decade = 15;
    std::string direction = "up";    // up | down | both
    std::string linewidth = "none";  // none | regression | triangle
    bool coherence = false;
    // [spectrum] zero means auto
    double zeta_hz = 0;
    double kappa_f_hz = 0;
    int points_pass1 = 61;
    int points_pass2 = 81;
    double span_estimates = 10;
    double span_fwhm = 3;
    // [pulling]
    double step_hz = 10;
    // [tlm]
    std::string variant = "dark";  // dark | bright
    // [output]
    std::string format = "csv";  // csv | json | svg
    std::string path = "out";

    bool operator==(const RunConfig&) const = default;

    PhysicalParams physical_params() const;
    void validate() const;  // grid and enum sanity; throws std::invalid_argument
};

// Sectioned key=value format; '#' starts a comment; numeric values accept the
// k/M suffixes (Hz multipliers). Unknown sections or keys, malformed numbers,
// and other suffixes are rejected with the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& c);

}  // namespace superlase
