#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "superlase/model.hpp"
#include "superlase/params.hpp"
#include "superlase/rosenbrock.hpp"
#include "superlase/state.hpp"

namespace superlase {

enum class SteadyMethod { march, march_newton };

struct SteadyTolerances {
    double tol_ss = 1e-9;          // dimensionless: residual * t_char must fall below
    // March tolerances: the march only has to reach the Newton basin; the
    // final accuracy is certified by the residual, not by the trajectory.
    double rtol = 1e-6;
    double atol = 1e-12;
    double newton_trigger = 1e-4;  // try Newton once residual * t_char falls below
    double max_model_time = 10.0;  // seconds of model time before giving up
    int newton_max_iter = 60;
    // A fixed point only counts as a steady state if its Jacobian spectrum
    // satisfies max Re(eig) < stab_factor / t_char: weak-pump superradiant
    // regimes can lose amplitude stability (pulsing), and a root-finder would
    // happily land on the unstable focus there.
    double stab_factor = 1e-4;
};

struct SteadySolution {
    Eigen::VectorXd x;
    double residual_norm = 0;        // weighted ||RHS||_2, units 1/s
    double elapsed_model_time = 0;   // seconds
    SteadyMethod method = SteadyMethod::march;
    bool converged = false;
    std::string what;                // diagnostic when not converged
};

// Weighted residual norm: sqrt(sum_i (dx_i / max(1,|x_i|))^2); converged means
// residual_norm / kappa < tol_ss with t_char = 1/kappa.
double weighted_residual(const Eigen::VectorXd& x, const Eigen::VectorXd& dx);

struct NewtonResult {
    Eigen::VectorXd x;
    double residual = 0;
    bool ok = false;
    int iters = 0;
};

// Damped Newton iteration on rhs(x) = 0 with a finite-difference Jacobian and
// row equilibration; tol_resid in the weighted-residual units (1/s).
NewtonResult newton_refine(const OdeSystem& sys, const Eigen::VectorXd& x0, double tol_resid,
                           int max_iter = 60);

// The largest real part over the FD-Jacobian spectrum (stability probe).
// When out_vec is given it receives the real part of the corresponding
// eigenvector (the local escape direction).
double max_jacobian_real_eig(const OdeSystem& sys, const Eigen::VectorXd& x,
                             Eigen::VectorXd* out_vec = nullptr);

// Generic steady-state driver: adaptive time march in growing windows with
// Newton refinement attempts; honest convergence flag.
SteadySolution solve_steady(const OdeSystem& sys, const Eigen::VectorXd& init, double t_char,
                            const SteadyTolerances& tol = {});

// Four-level front end per the spec contract.
struct SteadyState {
    MeanFieldState state;
    double residual_norm = 0;
    double elapsed_model_time = 0;
    SteadyMethod method = SteadyMethod::march;
    bool converged = false;
    std::string what;
};

SteadyState find_steady(const PhysicalParams& p, const MeanFieldState& init,
                        const SteadyTolerances& tol = {});
inline SteadyState find_steady(const PhysicalParams& p, const SteadyTolerances& tol = {}) {
    return find_steady(p, MeanFieldState::vacuum(), tol);
}

OdeSystem make_system(const PhysicalParams& p);

}  // namespace superlase
