#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "superlase/params.hpp"
#include "superlase/steady.hpp"
#include "superlase/tlm_model.hpp"

namespace superlase {

// Regression matrix for d/dt A(t) = B A(t) with
// A = [<a^dag(t)a(0)>, <sigma_xg(t)a(0)>, <sigma_Pg(t)a(0)>, <sigma_Sg(t)a(0)>]
// (three-level pipeline: the P row/column is absent). a0 holds A(0), the
// steady values of the corresponding one-time correlators.
struct RegressionMatrix {
    Eigen::MatrixXcd entries;
    Eigen::VectorXcd a0;
};

struct EigenSystem {
    Eigen::VectorXcd lambdas;       // ascending |Re|
    Eigen::MatrixXcd right_vecs;    // columns |i>
    Eigen::MatrixXcd left_vecs;     // rows <i~|, so left_vecs * right_vecs = I
    Eigen::VectorXcd weights;       // w_i = (|i>)_0 * <i~|A(0)>
    Eigen::MatrixXcd balanced_right;  // eigenvectors in balanced coordinates (for overlaps)
    Eigen::MatrixXcd b;             // the matrix itself (for the degenerate fallback)
    Eigen::VectorXcd a0;
    bool near_degenerate = false;
    double balance_scale = 1.0;
};

struct RegressionResult {
    cplx lambda_min;
    double linewidth = 0;        // 2 |Re lambda_min|
    double lasing_offset = 0;    // Im lambda_min (omega* - omega_0)
    double analytic_linewidth = 0;  // Eq.-of-motion closed form; 0 when not evaluated
};

RegressionMatrix build_b(const PhysicalParams& p, const SteadyState& steady);
RegressionMatrix build_b_tlm(const TlmParams& p, const TlmState& steady, bool converged);

// Biorthonormal left/right eigensystem with deterministic ordering (ascending
// |Re lambda|, ties by Im). balance_scale is the diagonal-similarity factor
// applied to all non-photon rows before eigensolving.
EigenSystem eig_lr(const RegressionMatrix& m, double balance_scale);

// lambda_min selection on an eigensystem: spectral-weight floor, then smallest
// |Im|, ties by smallest |Re|.
cplx select_lambda_min(const EigenSystem& es);

// Full regression linewidth at the given parameters. For nonzero detunings the
// eigenvalue is tracked from the zero-detuning member along a detuning
// homotopy by eigenvector overlap. Throws on unconverged steady input or
// ambiguous tracking.
RegressionResult linewidth_regression(const PhysicalParams& p, const SteadyState& steady);

struct TlmRegressionResult {
    cplx lambda_min;
    double linewidth = 0;
    double lasing_offset = 0;
};
TlmRegressionResult linewidth_regression_tlm(const TlmParams& p, const TlmState& steady);

// Closed-form linewidth in terms of the steady single-atom expectations
// (resonance only). Throws if detunings are nonzero or the denominator is
// numerically singular.
double linewidth_analytic(const PhysicalParams& p, const SteadyState& steady);

// S(omega) = 2 Re sum_i w_i / (i (omega - omega_0) - lambda_i) on the grid of
// offsets from omega_0. Near-degenerate systems fall back to direct time
// integration of the correlator ODE plus a numeric Fourier transform.
std::vector<std::pair<double, double>> lorentzian_spectrum(const EigenSystem& es,
                                                           const std::vector<double>& grid);

}  // namespace superlase
