#include "superlase/tlm_model.hpp"

#include <cmath>

namespace superlase {

namespace {
constexpr cplx I{0.0, 1.0};
}

// Three-level cumulant equations: the four-level set with the P sector removed
// (x -> e, gamma0 -> decay_eg, gamma_x -> decay_se, gamma_P -> 0,
//  Omega_alpha -> coherent_coupling, Omega_beta -> 0, Omega_c -> cavity_coupling).
TlmState derivative(const TlmState& s, const TlmParams& p) {
    const double N = p.n_atoms;
    const double k = p.kappa, geg = p.decay_eg, gse = p.decay_se, eta = p.eta;
    const double gc = p.cavity_coupling, W = p.coherent_coupling;
    const double dc = p.delta_c, ds = p.delta_s;
    const double G = p.gamma_s_total();

    const double pgg = s.pgg();
    const double inv = s.pee - pgg;

    TlmState d;

    d.n = -k * s.n - N * gc * s.cea.imag();

    d.cea = -(I * dc + 0.5 * (geg + eta + k)) * s.cea + I * (W / 2.0) * s.csa -
            I * (gc / 2.0) * (s.pee + s.n * inv + (N - 1.0) * s.see);

    d.csa = (I * (ds - dc) - 0.5 * (G + k)) * s.csa + I * (W / 2.0) * s.cea -
            I * (gc / 2.0) * ((s.n + 1.0) * std::conj(s.ces) + (N - 1.0) * std::conj(s.ses));

    d.see = -(geg + eta) * s.see + W * s.ses.imag() - gc * s.cea.imag() * inv;

    d.ses = (-I * ds - 0.5 * (geg + G + eta)) * s.ses + I * (W / 2.0) * (cplx(s.sss) - cplx(s.see)) -
            I * (gc / 2.0) * std::conj(s.csa) * inv + I * (gc / 2.0) * s.ces * s.cea;

    d.sss = -G * s.sss - W * s.ses.imag() - gc * (s.csa * s.ces).imag();

    d.pee = -geg * s.pee + gse * s.pss + W * s.ces.imag() + gc * s.cea.imag();

    d.pss = -gse * s.pss + eta * pgg - W * s.ces.imag();

    d.ces = (-I * ds - 0.5 * (geg + gse)) * s.ces + I * (W / 2.0) * (s.pss - s.pee) +
            I * (gc / 2.0) * std::conj(s.csa);

    return d;
}

void tlm_derivative_packed(const Eigen::VectorXd& x, Eigen::VectorXd& dx, const TlmParams& p) {
    derivative(TlmState::unpack(x), p).pack(dx);
}

}  // namespace superlase
