#pragma once

#include <vector>

#include "superlase/filter_model.hpp"
#include "superlase/regression.hpp"
#include "superlase/steady.hpp"

namespace superlase {

struct SpectrumPoint {
    double omega_b = 0;  // offset from omega_0, rad/s
    double n_filter = 0;
};

struct SpectrumResult {
    std::vector<SpectrumPoint> points;  // refined-pass scan
    double peak_omega = 0;              // fitted peak position (omega* - omega_0)
    double fwhm = 0;                    // fitted full width at half maximum
    double fit_quality = 0;             // rms residual of the fit over peak height
    FilterConfig filter;                // the probe actually used
};

// Steady probe occupation <b^dag b>_s with the probe at offset omega_b.
// The laser steady state is extended by the probe sector (linear solve) and
// the joint fixed point is Newton-polished with the full augmented RHS.
double extend_and_solve(const PhysicalParams& p, const FilterConfig& f, double omega_b,
                        const SteadyState& laser_steady);

struct ScanOptions {
    int points_pass1 = 61;
    int points_pass2 = 81;
    double span_estimates = 10.0;  // pass-1 half-span in units of the width estimate
    double span_fwhm = 3.0;        // pass-2 half-span in units of the pass-1 FWHM
    int threads = 1;
};

// Two-pass frequency scan of the probe: pass 1 sized by the closed-form
// linewidth estimate (kappa_f = estimate/50, zeta = kappa_f/10 unless the
// config provides explicit values), pass 2 refined around the peak; peak and
// FWHM from a least-squares Lorentzian fit over points above 10% of the peak.
// Throws if the scan resolves more than one peak.
SpectrumResult scan_spectrum(const PhysicalParams& p, const SteadyState& laser_steady,
                             const FilterConfig* explicit_filter = nullptr,
                             const ScanOptions& opts = {});

struct LorentzFit {
    double center = 0;
    double fwhm = 0;
    double height = 0;
    double rms_residual = 0;  // relative to the fitted height
};

// 3-parameter Lorentzian least squares: linearized 1/y quadratic fit followed
// by Gauss-Newton refinement in the direct domain.
LorentzFit fit_lorentzian(const std::vector<SpectrumPoint>& pts, double floor_fraction = 0.1);

}  // namespace superlase
