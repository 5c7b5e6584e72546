#pragma once

#include <Eigen/Dense>
#include <complex>

#include "superlase/params.hpp"
#include "superlase/state.hpp"

namespace superlase {

// Weakly coupled low-loss probe mode b: H_f = omega_b b^dag b + zeta (b^dag a + a^dag b),
// dissipator kappa_f L[b]. All rates angular.
struct FilterConfig {
    double zeta = 0;                    // coupling to the lasing mode
    double kappa_f = 0;                 // filter loss
    std::vector<double> omega_b_grid;   // offsets from omega_0 (rad/s)

    void validate(double kappa) const {
        if (!(zeta > 0) || !(kappa_f > 0))
            throw std::invalid_argument("FilterConfig: zeta and kappa_f must be > 0");
        if (zeta > kappa_f / 10.0 * (1.0 + 1e-12))
            throw std::invalid_argument("FilterConfig: require zeta <= kappa_f/10");
        if (kappa_f > kappa / 100.0 * (1.0 + 1e-12))
            throw std::invalid_argument("FilterConfig: require kappa_f <= kappa/100");
    }
};

// Filter-sector correlators appended to the 25 laser scalars.
// Packing order (9 reals, offsets from 25):
//   25      nf          <b^dag b>
//   26,27   Re/Im cab   <a^dag b>
//   28,29   Re/Im fx    <sigma_xg b>
//   30,31   Re/Im fp    <sigma_Pg b>
//   32,33   Re/Im fs    <sigma_Sg b>
struct FilterAugmentedState {
    static constexpr int dim = MeanFieldState::dim + 9;

    MeanFieldState laser;
    double nf = 0;
    cplx cab, fx, fp, fs;

    Eigen::VectorXd packed() const;
    static FilterAugmentedState unpack(const Eigen::VectorXd& v);
};

// RHS of the joint system: the laser equations plus the filter-sector
// equations plus the zeta back-action on the photon-sector correlators.
void filter_derivative_packed(const Eigen::VectorXd& x, Eigen::VectorXd& dx,
                              const PhysicalParams& p, const FilterConfig& f, double omega_b);

}  // namespace superlase
