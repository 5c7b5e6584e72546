#pragma once

#include <Eigen/Dense>

#include "superlase/params.hpp"
#include "superlase/state.hpp"

namespace superlase {

// Right-hand side of the closed second-order cumulant equations of the
// four-level lasing system. The complex-generic overload is the single source
// of truth; the real overload restricts it to the physical (real) manifold.
CorrelatorSet derivative(const CorrelatorSet& s, const PhysicalParams& p);
MeanFieldState derivative(const MeanFieldState& s, const PhysicalParams& p);

// Packed-vector RHS for the generic solvers (25 reals, layout per MeanFieldState).
void derivative_packed(const Eigen::VectorXd& x, Eigen::VectorXd& dx, const PhysicalParams& p);

// Rotate the {x,P} block of the steady single-atom density matrix into the
// dark/bright basis and evaluate the rescaled coherence measure.
// Requires omega_tilde > 0.
DarkBrightObservables dark_bright_transform(const MeanFieldState& s, const PhysicalParams& p);

}  // namespace superlase
