#include "superlase/filter_model.hpp"

#include <cmath>

#include "superlase/model.hpp"

namespace superlase {

namespace {
constexpr cplx I{0.0, 1.0};
}

Eigen::VectorXd FilterAugmentedState::packed() const {
    Eigen::VectorXd v(dim);
    Eigen::VectorXd lv = laser.packed();
    v.head(MeanFieldState::dim) = lv;
    int o = MeanFieldState::dim;
    v[o + 0] = nf;
    v[o + 1] = cab.real(); v[o + 2] = cab.imag();
    v[o + 3] = fx.real();  v[o + 4] = fx.imag();
    v[o + 5] = fp.real();  v[o + 6] = fp.imag();
    v[o + 7] = fs.real();  v[o + 8] = fs.imag();
    return v;
}

FilterAugmentedState FilterAugmentedState::unpack(const Eigen::VectorXd& v) {
    if (v.size() != dim) throw std::invalid_argument("FilterAugmentedState::unpack: bad size");
    FilterAugmentedState s;
    s.laser = MeanFieldState::unpack(v.head(MeanFieldState::dim));
    int o = MeanFieldState::dim;
    s.nf = v[o + 0];
    s.cab = {v[o + 1], v[o + 2]};
    s.fx = {v[o + 3], v[o + 4]};
    s.fp = {v[o + 5], v[o + 6]};
    s.fs = {v[o + 7], v[o + 8]};
    return s;
}

// Filter correlator equations, derived from the master equation with the probe
// terms under the same second-order truncation as the laser set. The probe is
// linear, so each filter correlator mirrors its cavity counterpart with
// (delta_b, kappa_f) in place of (delta_c, kappa) and a zeta drive from the
// corresponding a-correlator; the spontaneous and (N-1) collective terms of
// the a-equations are absent because [b, a^dag] = 0.
void filter_derivative_packed(const Eigen::VectorXd& x, Eigen::VectorXd& dx,
                              const PhysicalParams& p, const FilterConfig& f, double omega_b) {
    FilterAugmentedState s = FilterAugmentedState::unpack(x);
    const MeanFieldState& L = s.laser;

    const double N = p.n_atoms;
    const double g0 = p.gamma0, eta = p.eta, G = p.big_gamma();
    const double Oc = p.omega_c_rabi, Oa = p.omega_alpha, Ob = p.omega_beta;
    const double dc = p.delta_c, da = p.delta_alpha, d2 = p.delta_two();
    const double db = omega_b;  // filter detuning from omega_0
    const double kf = f.kappa_f, z = f.zeta;

    const double inv = L.pxx - L.pgg();

    MeanFieldState dl = derivative(L, p);
    // back-action of the probe on the photon-sector correlators
    dl.n += 2.0 * z * s.cab.imag();
    dl.cxa += -I * z * s.fx;
    dl.cpa += -I * z * s.fp;
    dl.csa += -I * z * s.fs;

    FilterAugmentedState d;
    d.laser = dl;

    d.nf = -kf * s.nf - 2.0 * z * s.cab.imag();

    d.cab = (I * (dc - db) - 0.5 * (p.kappa + kf)) * s.cab - I * z * (L.n - s.nf) +
            I * (N * Oc / 2.0) * s.fx;

    d.fx = -(I * db + 0.5 * (g0 + eta + kf)) * s.fx + I * (Oa / 2.0) * s.fs -
           I * (Oc / 2.0) * inv * s.cab - I * z * L.cxa;

    d.fp = (I * (d2 - db) - 0.5 * (eta + kf)) * s.fp + I * (Ob / 2.0) * s.fs -
           I * (Oc / 2.0) * std::conj(L.cxp) * s.cab - I * z * L.cpa;

    d.fs = (I * (da - db) - 0.5 * (G + kf)) * s.fs + I * (Oa / 2.0) * s.fx +
           I * (Ob / 2.0) * s.fp - I * (Oc / 2.0) * std::conj(L.cxs) * s.cab - I * z * L.csa;

    dx = d.packed();
}

}  // namespace superlase
