#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace superlase {

using cplx = std::complex<double>;

// The 16 tracked correlators of the four-level cumulant system, all promoted
// to complex. Hermiticity and permutation symmetry make seven of them exactly
// real on the physical manifold (n, sxx, spp, sss, pxx, ppp, pss); the complex
// promotion is what the realness shadow test integrates.
//
// <sigma_gg> is never stored: pgg() applies the population closure.
struct CorrelatorSet {
    cplx n;     // <a^dag a>
    cplx cxa;   // <sigma_xg a>
    cplx cpa;   // <sigma_Pg a>
    cplx csa;   // <sigma_Sg a>
    cplx sxx;   // <sigma_xg sigma_gx>   (two-atom)
    cplx sxp;   // <sigma_xg sigma_gP>
    cplx sxs;   // <sigma_xg sigma_gS>
    cplx spp;   // <sigma_Pg sigma_gP>
    cplx sps;   // <sigma_Pg sigma_gS>
    cplx sss;   // <sigma_Sg sigma_gS>
    cplx pxx;   // <sigma_xx>
    cplx ppp;   // <sigma_PP>
    cplx pss;   // <sigma_SS>
    cplx cxp;   // <sigma_xP>
    cplx cxs;   // <sigma_xS>
    cplx cps;   // <sigma_PS>

    cplx pgg() const { return 1.0 - pxx - ppp - pss; }
};

// Real-typed view of the physical state. Scalar packing order (25 reals):
//   0        n
//   1,2      Re/Im cxa
//   3,4      Re/Im cpa
//   5,6      Re/Im csa
//   7        sxx
//   8,9      Re/Im sxp
//   10,11    Re/Im sxs
//   12       spp
//   13,14    Re/Im sps
//   15       sss
//   16,17,18 pxx, ppp, pss
//   19,20    Re/Im cxp
//   21,22    Re/Im cxs
//   23,24    Re/Im cps
struct MeanFieldState {
    static constexpr int dim = 25;

    double n = 0;
    cplx cxa, cpa, csa;
    double sxx = 0;
    cplx sxp, sxs;
    double spp = 0;
    cplx sps;
    double sss = 0;
    double pxx = 0, ppp = 0, pss = 0;
    cplx cxp, cxs, cps;

    double pgg() const { return 1.0 - pxx - ppp - pss; }

    static MeanFieldState vacuum() { return MeanFieldState{}; }

    CorrelatorSet promote() const {
        CorrelatorSet c;
        c.n = n; c.cxa = cxa; c.cpa = cpa; c.csa = csa;
        c.sxx = sxx; c.sxp = sxp; c.sxs = sxs;
        c.spp = spp; c.sps = sps; c.sss = sss;
        c.pxx = pxx; c.ppp = ppp; c.pss = pss;
        c.cxp = cxp; c.cxs = cxs; c.cps = cps;
        return c;
    }
    // Real restriction; the seven structurally real components take the real
    // part (the complex-generic RHS produces exactly real values there).
    static MeanFieldState restrict_real(const CorrelatorSet& c) {
        MeanFieldState s;
        s.n = c.n.real();
        s.cxa = c.cxa; s.cpa = c.cpa; s.csa = c.csa;
        s.sxx = c.sxx.real(); s.sxp = c.sxp; s.sxs = c.sxs;
        s.spp = c.spp.real(); s.sps = c.sps; s.sss = c.sss.real();
        s.pxx = c.pxx.real(); s.ppp = c.ppp.real(); s.pss = c.pss.real();
        s.cxp = c.cxp; s.cxs = c.cxs; s.cps = c.cps;
        return s;
    }

    void pack(Eigen::VectorXd& v) const {
        v.resize(dim);
        v[0] = n;
        v[1] = cxa.real(); v[2] = cxa.imag();
        v[3] = cpa.real(); v[4] = cpa.imag();
        v[5] = csa.real(); v[6] = csa.imag();
        v[7] = sxx;
        v[8] = sxp.real(); v[9] = sxp.imag();
        v[10] = sxs.real(); v[11] = sxs.imag();
        v[12] = spp;
        v[13] = sps.real(); v[14] = sps.imag();
        v[15] = sss;
        v[16] = pxx; v[17] = ppp; v[18] = pss;
        v[19] = cxp.real(); v[20] = cxp.imag();
        v[21] = cxs.real(); v[22] = cxs.imag();
        v[23] = cps.real(); v[24] = cps.imag();
    }
    Eigen::VectorXd packed() const {
        Eigen::VectorXd v;
        pack(v);
        return v;
    }
    static MeanFieldState unpack(const Eigen::VectorXd& v) {
        if (v.size() != dim) throw std::invalid_argument("MeanFieldState::unpack: bad size");
        MeanFieldState s;
        s.n = v[0];
        s.cxa = {v[1], v[2]};
        s.cpa = {v[3], v[4]};
        s.csa = {v[5], v[6]};
        s.sxx = v[7];
        s.sxp = {v[8], v[9]};
        s.sxs = {v[10], v[11]};
        s.spp = v[12];
        s.sps = {v[13], v[14]};
        s.sss = v[15];
        s.pxx = v[16]; s.ppp = v[17]; s.pss = v[18];
        s.cxp = {v[19], v[20]};
        s.cxs = {v[21], v[22]};
        s.cps = {v[23], v[24]};
        return s;
    }

    // Population closure check: every population (including the implied pgg)
    // within [-tol, 1+tol], photon number >= -tol.
    bool physical(double tol = 1e-6) const {
        auto in_range = [tol](double p) { return p >= -tol && p <= 1.0 + tol; };
        return in_range(pxx) && in_range(ppp) && in_range(pss) && in_range(pgg()) &&
               n >= -tol;
    }

    // Name of the first non-finite field, or empty string.
    std::string first_nonfinite() const;
};

// Steady-state dark/bright observables, Eqs. (2)-(3) basis rotation applied to
// the {x,P} block of the single-atom density matrix.
struct DarkBrightObservables {
    double pop_dark = 0;    // <sigma_DD>
    double pop_bright = 0;  // <sigma_BB>
    cplx coh_bd;            // <sigma_BD>
    double c_bd = 0;        // |<sigma_BD>| / (<sigma_DD> + <sigma_BB>)
};

}  // namespace superlase
