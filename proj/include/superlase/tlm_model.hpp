#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "superlase/params.hpp"
#include "superlase/state.hpp"

namespace superlase {

// Correlator set of the reduced three-level laser (states g, e, S).
// Packing order (13 reals):
//   0      n
//   1,2    Re/Im cea   <sigma_eg a>
//   3,4    Re/Im csa   <sigma_Sg a>
//   5      see         <sigma_eg sigma_ge>
//   6,7    Re/Im ses   <sigma_eg sigma_gS>
//   8      sss         <sigma_Sg sigma_gS>
//   9,10   pee, pss
//   11,12  Re/Im ces   <sigma_eS>
struct TlmState {
    static constexpr int dim = 13;

    double n = 0;
    cplx cea, csa;
    double see = 0;
    cplx ses;
    double sss = 0;
    double pee = 0, pss = 0;
    cplx ces;

    double pgg() const { return 1.0 - pee - pss; }

    static TlmState vacuum() { return TlmState{}; }

    void pack(Eigen::VectorXd& v) const {
        v.resize(dim);
        v[0] = n;
        v[1] = cea.real(); v[2] = cea.imag();
        v[3] = csa.real(); v[4] = csa.imag();
        v[5] = see;
        v[6] = ses.real(); v[7] = ses.imag();
        v[8] = sss;
        v[9] = pee; v[10] = pss;
        v[11] = ces.real(); v[12] = ces.imag();
    }
    Eigen::VectorXd packed() const {
        Eigen::VectorXd v;
        pack(v);
        return v;
    }
    static TlmState unpack(const Eigen::VectorXd& v) {
        if (v.size() != dim) throw std::invalid_argument("TlmState::unpack: bad size");
        TlmState s;
        s.n = v[0];
        s.cea = {v[1], v[2]};
        s.csa = {v[3], v[4]};
        s.see = v[5];
        s.ses = {v[6], v[7]};
        s.sss = v[8];
        s.pee = v[9]; s.pss = v[10];
        s.ces = {v[11], v[12]};
        return s;
    }

    bool physical(double tol = 1e-6) const {
        auto in_range = [tol](double p) { return p >= -tol && p <= 1.0 + tol; };
        return in_range(pee) && in_range(pss) && in_range(pgg()) && n >= -tol;
    }
};

TlmState derivative(const TlmState& s, const TlmParams& p);
void tlm_derivative_packed(const Eigen::VectorXd& x, Eigen::VectorXd& dx, const TlmParams& p);

}  // namespace superlase
