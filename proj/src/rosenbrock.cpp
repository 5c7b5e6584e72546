#include "superlase/rosenbrock.hpp"

#include <algorithm>
#include <cmath>

namespace superlase {

Eigen::MatrixXd fd_jacobian(const OdeSystem& sys, const Eigen::VectorXd& x) {
    const int n = sys.dim;
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd f0(n), f1(n), xp = x;
    sys.rhs(x, f0);
    const double sq = std::sqrt(std::numeric_limits<double>::epsilon());
    for (int j = 0; j < n; ++j) {
        const double h = sq * std::max(std::abs(x[j]), 1.0);
        xp[j] = x[j] + h;
        sys.rhs(xp, f1);
        J.col(j) = (f1 - f0) / h;
        xp[j] = x[j];
    }
    return J;
}

namespace {

// RODAS 4(3) coefficients (Hairer & Wanner), the set used by the classic
// Fortran code and boost::odeint's rosenbrock4.
struct Coef {
    static constexpr double gamma = 0.25;
    static constexpr double a21 = 1.544;
    static constexpr double a31 = 0.9466785280815826, a32 = 0.2557011698983284;
    static constexpr double a41 = 3.314825187068521, a42 = 2.896124015972201,
                            a43 = 0.9986419139977817;
    static constexpr double a51 = 1.221224509226641, a52 = 6.019134481288629,
                            a53 = 12.53708332932087, a54 = -0.6878860361058950;
    static constexpr double c21 = -5.6688;
    static constexpr double c31 = -2.430093356833875, c32 = -0.2063599157091915;
    static constexpr double c41 = -0.1073529058151375, c42 = -9.594562251023355,
                            c43 = -20.47028614809616;
    static constexpr double c51 = 7.496443313967647, c52 = -10.24680431464352,
                            c53 = -33.99990352819905, c54 = 11.70890893206160;
    static constexpr double c61 = 8.083246795921522, c62 = -7.981132988064893,
                            c63 = -31.52159432874371, c64 = 16.31930543123136,
                            c65 = -6.058818238834054;
};

double error_norm(const Eigen::VectorXd& xold, const Eigen::VectorXd& xnew,
                  const Eigen::VectorXd& xerr, double atol, double rtol) {
    const int n = xold.size();
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        const double sk = atol + rtol * std::max(std::abs(xold[i]), std::abs(xnew[i]));
        const double e = xerr[i] / sk;
        acc += e * e;
    }
    return std::sqrt(acc / n);
}

}  // namespace

IntegrateResult integrate(const OdeSystem& sys, Eigen::VectorXd& x, double t0, double t1,
                          const IntegrateOptions& opts) {
    using C = Coef;
    IntegrateResult res;
    res.t = t0;
    const int n = sys.dim;
    if (t1 <= t0) {
        res.ok = true;
        return res;
    }

    Eigen::VectorXd f0(n), ftmp(n), xtmp(n), xerr(n), xnew(n);
    Eigen::VectorXd g1(n), g2(n), g3(n), g4(n), g5(n);

    double t = t0;
    double dt = opts.dt_init;
    sys.rhs(x, f0);
    if (dt <= 0) {
        // conservative first step from the derivative scale
        double fmag = 0;
        for (int i = 0; i < n; ++i)
            fmag = std::max(fmag, std::abs(f0[i]) / std::max(std::abs(x[i]), 1.0));
        dt = (fmag > 0) ? 1e-4 / fmag : (t1 - t0) * 1e-6;
        dt = std::min(dt, t1 - t0);
    }

    bool first_step = true, last_rejected = false;
    double err_old = 0, dt_old = 0;
    constexpr double safe = 0.9, fac_lo = 1.0 / 6.0, fac_hi = 5.0;

    while (t < t1) {
        if (res.steps++ > opts.max_steps) {
            res.what = "max step count exceeded";
            return res;
        }
        dt = std::min(dt, t1 - t);

        sys.rhs(x, f0);
        if (!f0.allFinite()) {
            res.what = "non-finite derivative";
            return res;
        }
        Eigen::MatrixXd W = -fd_jacobian(sys, x);
        W.diagonal().array() += 1.0 / (C::gamma * dt);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(W);

        g1 = lu.solve(f0);

        xtmp = x + C::a21 * g1;
        sys.rhs(xtmp, ftmp);
        g2 = lu.solve(ftmp + (C::c21 / dt) * g1);

        xtmp = x + C::a31 * g1 + C::a32 * g2;
        sys.rhs(xtmp, ftmp);
        g3 = lu.solve(ftmp + (C::c31 * g1 + C::c32 * g2) / dt);

        xtmp = x + C::a41 * g1 + C::a42 * g2 + C::a43 * g3;
        sys.rhs(xtmp, ftmp);
        g4 = lu.solve(ftmp + (C::c41 * g1 + C::c42 * g2 + C::c43 * g3) / dt);

        xtmp = x + C::a51 * g1 + C::a52 * g2 + C::a53 * g3 + C::a54 * g4;
        sys.rhs(xtmp, ftmp);
        g5 = lu.solve(ftmp + (C::c51 * g1 + C::c52 * g2 + C::c53 * g3 + C::c54 * g4) / dt);

        xtmp += g5;
        sys.rhs(xtmp, ftmp);
        xerr = lu.solve(ftmp + (C::c61 * g1 + C::c62 * g2 + C::c63 * g3 + C::c64 * g4 +
                                C::c65 * g5) / dt);
        xnew = xtmp + xerr;

        double err = xnew.allFinite()
                         ? error_norm(x, xnew, xerr, opts.atol, opts.rtol)
                         : std::numeric_limits<double>::infinity();

        double fac = std::clamp(std::pow(err, 0.25) / safe, fac_lo, fac_hi);
        double dt_new = dt / fac;
        if (err <= 1.0) {
            if (!first_step) {
                double fac_pred = (dt_old / dt) * std::pow(err * err / err_old, 0.25) / safe;
                fac_pred = std::clamp(fac_pred, fac_lo, fac_hi);
                fac = std::max(fac, fac_pred);
                dt_new = dt / fac;
            }
            first_step = false;
            dt_old = dt;
            err_old = std::max(0.01, err);
            if (last_rejected) dt_new = std::min(dt_new, dt);
            t += dt;
            x = xnew;
            dt = dt_new;
            last_rejected = false;
        } else {
            if (!std::isfinite(dt_new) || dt_new < 1e-15 * (t1 - t0)) {
                res.what = "step size underflow";
                return res;
            }
            dt = dt_new;
            last_rejected = true;
            ++res.rejected;
        }
    }
    res.t = t;
    res.ok = true;
    return res;
}

}  // namespace superlase
