#include "superlase/model.hpp"

#include <cmath>
#include <stdexcept>

namespace superlase {

namespace {
constexpr cplx I{0.0, 1.0};

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

std::string MeanFieldState::first_nonfinite() const {
    const struct { const char* name; cplx v; } fields[] = {
        {"n", n},     {"cxa", cxa}, {"cpa", cpa}, {"csa", csa}, {"sxx", sxx},
        {"sxp", sxp}, {"sxs", sxs}, {"spp", spp}, {"sps", sps}, {"sss", sss},
        {"pxx", pxx}, {"ppp", ppp}, {"pss", pss}, {"cxp", cxp}, {"cxs", cxs},
        {"cps", cps},
    };
    for (const auto& f : fields)
        if (!finite(f.v)) return f.name;
    return {};
}

// Equations of motion for the 16 correlators, derived from the master
// equation under the second-order cumulant truncation. Conjugate identities
// (hermiticity + atom-permutation symmetry) eliminate the conjugate partners:
//   <a^dag sigma_gm> = conj(<sigma_mg a>),   <sigma_mg sigma_gn> pairs likewise,
//   <a a^dag> = <a^dag a> + 1,               <sigma_nm> = conj(<sigma_mn>).
// Frame energies: E_x = 0, E_S = delta_alpha, E_P = delta_2 = delta_alpha - delta_beta.
CorrelatorSet derivative(const CorrelatorSet& s, const PhysicalParams& p) {
    const double N = p.n_atoms;
    const double k = p.kappa, g0 = p.gamma0, gx = p.gamma_x, gp = p.gamma_p, eta = p.eta;
    const double Oc = p.omega_c_rabi, Oa = p.omega_alpha, Ob = p.omega_beta;
    const double dc = p.delta_c, da = p.delta_alpha, db = p.delta_beta;
    const double d2 = p.delta_two();
    const double G = p.big_gamma();

    const cplx pgg = s.pgg();
    const cplx inv = s.pxx - pgg;  // <sigma_xx - sigma_gg>

    CorrelatorSet d;

    // photon sector
    d.n = -k * s.n + I * (N * Oc / 2.0) * (s.cxa - std::conj(s.cxa));

    d.cxa = -(I * dc + 0.5 * (g0 + eta + k)) * s.cxa + I * (Oa / 2.0) * s.csa -
            I * (Oc / 2.0) * (s.pxx + s.n * inv + (N - 1.0) * s.sxx);

    d.cpa = (I * (d2 - dc) - 0.5 * (eta + k)) * s.cpa + I * (Ob / 2.0) * s.csa -
            I * (Oc / 2.0) * ((s.n + 1.0) * std::conj(s.cxp) + (N - 1.0) * std::conj(s.sxp));

    d.csa = (I * (da - dc) - 0.5 * (G + k)) * s.csa + I * (Oa / 2.0) * s.cxa +
            I * (Ob / 2.0) * s.cpa -
            I * (Oc / 2.0) * ((s.n + 1.0) * std::conj(s.cxs) + (N - 1.0) * std::conj(s.sxs));

    // two-atom sector
    {
        const cplx t1 = I * (Oa / 2.0) * std::conj(s.sxs);
        const cplx t2 = I * (Oc / 2.0) * s.cxa;
        d.sxx = -(g0 + eta) * s.sxx + (t1 + std::conj(t1)) + (t2 + std::conj(t2)) * inv;
    }

    d.sxp = (-I * d2 - 0.5 * (g0 + 2.0 * eta)) * s.sxp + I * (Oa / 2.0) * std::conj(s.sps) -
            I * (Ob / 2.0) * s.sxs +
            I * (Oc / 2.0) * (s.cxa * s.cxp - std::conj(s.cpa) * inv);

    d.sxs = (-I * da - 0.5 * (g0 + G + eta)) * s.sxs + I * (Oa / 2.0) * (s.sss - s.sxx) -
            I * (Ob / 2.0) * s.sxp - I * (Oc / 2.0) * std::conj(s.csa) * inv +
            I * (Oc / 2.0) * s.cxs * s.cxa;

    {
        const cplx t = I * (Oc / 2.0) * s.cpa * s.cxp - I * (Ob / 2.0) * s.sps;
        d.spp = -eta * s.spp + (t + std::conj(t));
    }

    d.sps = (-I * db - 0.5 * (G + eta)) * s.sps - I * (Oa / 2.0) * std::conj(s.sxp) +
            I * (Ob / 2.0) * (s.sss - s.spp) +
            I * (Oc / 2.0) * (s.cpa * s.cxs - std::conj(s.cxp) * std::conj(s.csa));

    {
        const cplx t = I * (Oa / 2.0) * s.sxs + I * (Ob / 2.0) * s.sps +
                       I * (Oc / 2.0) * s.csa * s.cxs;
        d.sss = -G * s.sss + (t + std::conj(t));
    }

    // populations
    {
        const cplx t = -I * (Oa / 2.0) * s.cxs + I * (Oc / 2.0) * std::conj(s.cxa);
        d.pxx = -g0 * s.pxx + gx * s.pss + (t + std::conj(t));
    }
    {
        const cplx t = I * (Ob / 2.0) * s.cps;
        d.ppp = gp * s.pss - (t + std::conj(t));
    }
    {
        const cplx t = I * (Oa / 2.0) * s.cxs + I * (Ob / 2.0) * s.cps;
        d.pss = -(gx + gp) * s.pss + eta * pgg + (t + std::conj(t));
    }

    // single-atom coherences
    d.cxp = (-I * d2 - 0.5 * g0) * s.cxp + I * (Oa / 2.0) * std::conj(s.cps) -
            I * (Ob / 2.0) * s.cxs + I * (Oc / 2.0) * std::conj(s.cpa);

    d.cxs = (-I * da - 0.5 * (g0 + gx + gp)) * s.cxs + I * (Oa / 2.0) * (s.pss - s.pxx) -
            I * (Ob / 2.0) * s.cxp + I * (Oc / 2.0) * std::conj(s.csa);

    d.cps = (-I * db - 0.5 * (gx + gp)) * s.cps - I * (Oa / 2.0) * std::conj(s.cxp) +
            I * (Ob / 2.0) * (s.pss - s.ppp);

    return d;
}

MeanFieldState derivative(const MeanFieldState& s, const PhysicalParams& p) {
    const std::string bad = s.first_nonfinite();
    if (!bad.empty())
        throw std::invalid_argument("derivative: non-finite state field '" + bad + "'");
    return MeanFieldState::restrict_real(derivative(s.promote(), p));
}

void derivative_packed(const Eigen::VectorXd& x, Eigen::VectorXd& dx, const PhysicalParams& p) {
    derivative(MeanFieldState::unpack(x), p).pack(dx);
}

DarkBrightObservables dark_bright_transform(const MeanFieldState& s, const PhysicalParams& p) {
    const double Oa = p.omega_alpha, Ob = p.omega_beta;
    const double ot2 = Oa * Oa + Ob * Ob;
    if (!(ot2 > 0))
        throw std::domain_error("dark_bright_transform: undefined basis, omega_tilde = 0");

    DarkBrightObservables o;
    const double re_xp = s.cxp.real();
    o.pop_dark = (Ob * Ob * s.pxx - 2.0 * Oa * Ob * re_xp + Oa * Oa * s.ppp) / ot2;
    o.pop_bright = (Oa * Oa * s.pxx + 2.0 * Oa * Ob * re_xp + Ob * Ob * s.ppp) / ot2;
    o.coh_bd = (Oa * Ob * (s.pxx - s.ppp) - Oa * Oa * s.cxp + Ob * Ob * std::conj(s.cxp)) / ot2;
    const double denom = o.pop_dark + o.pop_bright;
    if (std::abs(denom) < 1e-15)
        throw std::domain_error("dark_bright_transform: no excited-manifold population");
    o.c_bd = std::abs(o.coh_bd) / denom;
    return o;
}

TlmParams tlm_reduce(const PhysicalParams& p, TlmVariant variant) {
    const double Oa = p.omega_alpha, Ob = p.omega_beta;
    const double ot = p.omega_tilde();
    if (!(ot > 0))
        throw std::domain_error("tlm_reduce: undefined basis, omega_tilde = 0");
    const double ot2 = ot * ot;

    TlmParams t;
    t.n_atoms = p.n_atoms;
    t.kappa = p.kappa;
    t.eta = p.eta;
    t.delta_c = p.delta_c;
    t.delta_s = p.delta_alpha;
    t.lasing_wavelength = p.lasing_wavelength;
    if (variant == TlmVariant::dark) {
        t.decay_se = (Oa * Oa * p.gamma_p + Ob * Ob * p.gamma_x) / ot2;
        t.decay_eg = Ob * Ob * p.gamma0 / ot2;
        t.cavity_coupling = Ob * p.omega_c_rabi / ot;
        t.coherent_coupling = 0;
    } else {
        t.decay_se = (Ob * Ob * p.gamma_p + Oa * Oa * p.gamma_x) / ot2;
        t.decay_eg = Oa * Oa * p.gamma0 / ot2;
        t.cavity_coupling = Oa * p.omega_c_rabi / ot;
        t.coherent_coupling = ot;
    }
    return t;
}

}  // namespace superlase
