#pragma once

// Oracle model definitions built from the master equation as printed:
// H_I = delta_c a^dag a + sum_j [delta_alpha sigma_SS + (delta_alpha - delta_beta) sigma_PP]
//     + sum_j (Oc/2 a^dag sigma_gx + Oa/2 sigma_Sx + Ob/2 sigma_SP + h.c.)
// plus dissipators kappa L[a], gamma_x L[sigma_xS], gamma_P L[sigma_PS],
// gamma_0 L[sigma_gx], eta L[sigma_Sg]; the probe adds
// omega_b b^dag b + zeta (b^dag a + a^dag b) and kappa_f L[b].

#include <complex>

#include "cumulant_oracle.hpp"
#include "superlase/filter_model.hpp"
#include "superlase/params.hpp"
#include "superlase/state.hpp"
#include "superlase/tlm_model.hpp"

namespace oracle {

// four-level indices
enum : int { LG = 0, LX = 1, LP = 2, LS = 3 };

inline ModelDef four_level_model(const superlase::PhysicalParams& p) {
    ModelDef m;
    m.n_atoms = p.n_atoms;

    const ModeOp a{0, false}, ad{0, true};
    m.h_fixed.push_back(Term::mode(p.delta_c, {ad, a}));

    auto add_pa = [&](cplx c, int mu, int nu, std::vector<ModeOp> ops = {}) {
        m.h_per_atom.push_back(Term::atomic(c, -1, mu, nu, std::move(ops)));
    };
    add_pa(p.delta_alpha, LS, LS);
    add_pa(p.delta_alpha - p.delta_beta, LP, LP);
    add_pa(p.omega_c_rabi / 2.0, LG, LX, {ad});
    add_pa(p.omega_c_rabi / 2.0, LX, LG, {a});
    add_pa(p.omega_alpha / 2.0, LS, LX);
    add_pa(p.omega_alpha / 2.0, LX, LS);
    add_pa(p.omega_beta / 2.0, LS, LP);
    add_pa(p.omega_beta / 2.0, LP, LS);

    m.jumps.push_back({p.kappa, Term::mode(1.0, {a}), false});
    m.jumps.push_back({p.gamma_x, Term::atomic(1.0, -1, LX, LS), true});
    m.jumps.push_back({p.gamma_p, Term::atomic(1.0, -1, LP, LS), true});
    m.jumps.push_back({p.gamma0, Term::atomic(1.0, -1, LG, LX), true});
    m.jumps.push_back({p.eta, Term::atomic(1.0, -1, LS, LG), true});
    return m;
}

inline ModelDef four_level_with_filter(const superlase::PhysicalParams& p,
                                       const superlase::FilterConfig& f, double omega_b) {
    ModelDef m = four_level_model(p);
    const ModeOp a{0, false}, ad{0, true}, b{1, false}, bd{1, true};
    m.h_fixed.push_back(Term::mode(omega_b, {bd, b}));
    m.h_fixed.push_back(Term::mode(f.zeta, {bd, a}));
    m.h_fixed.push_back(Term::mode(f.zeta, {ad, b}));
    m.jumps.push_back({f.kappa_f, Term::mode(1.0, {b}), false});
    return m;
}

struct FilterValues {
    cplx nf, cab, fx, fp, fs;
};

inline StateLookup four_level_lookup(const superlase::CorrelatorSet& s,
                                     const FilterValues* fv = nullptr) {
    StateLookup look;
    look.single_atom = [s](int mu, int nu) -> cplx {
        if (mu == LG && nu == LG) return s.pgg();
        if (mu == LX && nu == LX) return s.pxx;
        if (mu == LP && nu == LP) return s.ppp;
        if (mu == LS && nu == LS) return s.pss;
        if (mu == LX && nu == LP) return s.cxp;
        if (mu == LP && nu == LX) return std::conj(s.cxp);
        if (mu == LX && nu == LS) return s.cxs;
        if (mu == LS && nu == LX) return std::conj(s.cxs);
        if (mu == LP && nu == LS) return s.cps;
        if (mu == LS && nu == LP) return std::conj(s.cps);
        throw std::logic_error("four_level_lookup: unexpected single-atom query");
    };
    look.atom_mode = [s, fv](int mu, int mode) -> cplx {
        if (mode == 0) {
            if (mu == LX) return s.cxa;
            if (mu == LP) return s.cpa;
            if (mu == LS) return s.csa;
        } else if (fv) {
            if (mu == LX) return fv->fx;
            if (mu == LP) return fv->fp;
            if (mu == LS) return fv->fs;
        }
        throw std::logic_error("four_level_lookup: unexpected atom-mode query");
    };
    look.two_atom = [s](int mu, int nu) -> cplx {
        if (mu == LX && nu == LX) return s.sxx;
        if (mu == LX && nu == LP) return s.sxp;
        if (mu == LP && nu == LX) return std::conj(s.sxp);
        if (mu == LX && nu == LS) return s.sxs;
        if (mu == LS && nu == LX) return std::conj(s.sxs);
        if (mu == LP && nu == LP) return s.spp;
        if (mu == LP && nu == LS) return s.sps;
        if (mu == LS && nu == LP) return std::conj(s.sps);
        if (mu == LS && nu == LS) return s.sss;
        throw std::logic_error("four_level_lookup: unexpected two-atom query");
    };
    look.mode_pair = [s, fv](int dag_mode, int ann_mode) -> cplx {
        if (dag_mode == 0 && ann_mode == 0) return s.n;
        if (fv) {
            if (dag_mode == 1 && ann_mode == 1) return fv->nf;
            if (dag_mode == 0 && ann_mode == 1) return fv->cab;
            if (dag_mode == 1 && ann_mode == 0) return std::conj(fv->cab);
        }
        throw std::logic_error("four_level_lookup: unexpected mode-pair query");
    };
    return look;
}

// tracked-correlator expressions, four-level
inline Expr trk_mode_pair(int dag_mode, int ann_mode) {
    return {Term::mode(1.0, {{dag_mode, true}, {ann_mode, false}})};
}
inline Expr trk_atom_mode(int mu, int mode) {
    return {Term::atomic(1.0, 1, mu, LG, {{mode, false}})};
}
inline Expr trk_two_atom(int mu, int nu) {
    Expr e = {Term::atomic(1.0, 1, mu, LG)};
    return mul(e, Expr{Term::atomic(1.0, 2, LG, nu)});
}
inline Expr trk_single(int mu, int nu) { return {Term::atomic(1.0, 1, mu, nu)}; }

// three-level model (g, e, S) with e in the LX slot and S in the LP slot
enum : int { TG = 0, TE = 1, TS = 2 };

inline ModelDef tlm_model(const superlase::TlmParams& p) {
    ModelDef m;
    m.n_atoms = p.n_atoms;
    const ModeOp a{0, false}, ad{0, true};
    m.h_fixed.push_back(Term::mode(p.delta_c, {ad, a}));

    auto add_pa = [&](cplx c, int mu, int nu, std::vector<ModeOp> ops = {}) {
        m.h_per_atom.push_back(Term::atomic(c, -1, mu, nu, std::move(ops)));
    };
    add_pa(p.delta_s, TS, TS);
    add_pa(p.cavity_coupling / 2.0, TG, TE, {ad});
    add_pa(p.cavity_coupling / 2.0, TE, TG, {a});
    add_pa(p.coherent_coupling / 2.0, TS, TE);
    add_pa(p.coherent_coupling / 2.0, TE, TS);

    m.jumps.push_back({p.kappa, Term::mode(1.0, {a}), false});
    m.jumps.push_back({p.decay_se, Term::atomic(1.0, -1, TE, TS), true});
    m.jumps.push_back({p.decay_eg, Term::atomic(1.0, -1, TG, TE), true});
    m.jumps.push_back({p.eta, Term::atomic(1.0, -1, TS, TG), true});
    return m;
}

inline StateLookup tlm_lookup(const superlase::TlmState& s) {
    StateLookup look;
    look.single_atom = [s](int mu, int nu) -> cplx {
        if (mu == TG && nu == TG) return s.pgg();
        if (mu == TE && nu == TE) return s.pee;
        if (mu == TS && nu == TS) return s.pss;
        if (mu == TE && nu == TS) return s.ces;
        if (mu == TS && nu == TE) return std::conj(s.ces);
        throw std::logic_error("tlm_lookup: unexpected single-atom query");
    };
    look.atom_mode = [s](int mu, int mode) -> cplx {
        if (mode == 0) {
            if (mu == TE) return s.cea;
            if (mu == TS) return s.csa;
        }
        throw std::logic_error("tlm_lookup: unexpected atom-mode query");
    };
    look.two_atom = [s](int mu, int nu) -> cplx {
        if (mu == TE && nu == TE) return s.see;
        if (mu == TE && nu == TS) return s.ses;
        if (mu == TS && nu == TE) return std::conj(s.ses);
        if (mu == TS && nu == TS) return s.sss;
        throw std::logic_error("tlm_lookup: unexpected two-atom query");
    };
    look.mode_pair = [s](int dag_mode, int ann_mode) -> cplx {
        if (dag_mode == 0 && ann_mode == 0) return s.n;
        throw std::logic_error("tlm_lookup: unexpected mode-pair query");
    };
    return look;
}

}  // namespace oracle
