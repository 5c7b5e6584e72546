#include "superlase/steady.hpp"

#include <cmath>

namespace superlase {

double weighted_residual(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
    double acc = 0;
    for (int i = 0; i < x.size(); ++i) {
        const double e = dx[i] / std::max(1.0, std::abs(x[i]));
        acc += e * e;
    }
    return std::sqrt(acc);
}

NewtonResult newton_refine(const OdeSystem& sys, const Eigen::VectorXd& x0, double tol_resid,
                           int max_iter) {
    NewtonResult r;
    r.x = x0;
    Eigen::VectorXd f(sys.dim), ft(sys.dim);
    sys.rhs(r.x, f);
    r.residual = weighted_residual(r.x, f);

    for (int it = 0; it < max_iter; ++it) {
        if (r.residual < tol_resid) {
            r.ok = true;
            r.iters = it;
            return r;
        }
        Eigen::MatrixXd J = fd_jacobian(sys, r.x);
        // exactly conserved directions (identically zero row and residual,
        // e.g. a fully decoupled level) are frozen out of the linear solve
        std::vector<int> active;
        active.reserve(sys.dim);
        for (int i = 0; i < sys.dim; ++i)
            if (J.row(i).cwiseAbs().maxCoeff() != 0.0 || f[i] != 0.0) active.push_back(i);
        const int na = static_cast<int>(active.size());
        if (na == 0) break;
        Eigen::MatrixXd Ja(na, na);
        Eigen::VectorXd fa(na);
        for (int i = 0; i < na; ++i) {
            fa[i] = f[active[i]];
            for (int j = 0; j < na; ++j) Ja(i, j) = J(active[i], active[j]);
        }
        // row equilibration: the rates span many orders of magnitude
        for (int i = 0; i < na; ++i) {
            const double m = Ja.row(i).cwiseAbs().maxCoeff();
            const double s = (m > 0) ? 1.0 / m : 1.0;
            Ja.row(i) *= s;
            fa[i] *= s;
        }
        Eigen::VectorXd step_a = Eigen::PartialPivLU<Eigen::MatrixXd>(Ja).solve(-fa);
        if (!step_a.allFinite()) break;
        Eigen::VectorXd step = Eigen::VectorXd::Zero(sys.dim);
        for (int i = 0; i < na; ++i) step[active[i]] = step_a[i];

        bool accepted = false;
        for (double alpha = 1.0; alpha > 1e-4; alpha *= 0.5) {
            Eigen::VectorXd xt = r.x + alpha * step;
            sys.rhs(xt, ft);
            if (!ft.allFinite()) continue;
            double rt = weighted_residual(xt, ft);
            if (rt < r.residual * (1.0 - 0.25 * alpha) || rt < tol_resid) {
                r.x = xt;
                f = ft;
                r.residual = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    r.ok = r.residual < tol_resid;
    return r;
}

double max_jacobian_real_eig(const OdeSystem& sys, const Eigen::VectorXd& x,
                             Eigen::VectorXd* out_vec) {
    Eigen::MatrixXd J = fd_jacobian(sys, x);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, out_vec != nullptr);
    int imax = 0;
    es.eigenvalues().real().maxCoeff(&imax);
    if (out_vec) {
        Eigen::VectorXcd v = es.eigenvectors().col(imax);
        if (v.real().norm() > v.imag().norm())
            *out_vec = v.real();
        else
            *out_vec = v.imag();
        out_vec->normalize();
    }
    return es.eigenvalues()[imax].real();
}

SteadySolution solve_steady(const OdeSystem& sys, const Eigen::VectorXd& init, double t_char,
                            const SteadyTolerances& tol) {
    SteadySolution sol;
    sol.x = init;
    Eigen::VectorXd f(sys.dim), ft(sys.dim);
    sys.rhs(sol.x, f);
    sol.residual_norm = weighted_residual(sol.x, f);
    const double tol_resid = tol.tol_ss / t_char;

    const double stab_tol = tol.stab_factor / t_char;
    auto is_physical = [&](const Eigen::VectorXd& x) {
        return !sys.physical || sys.physical(x);
    };
    // A fixed point is accepted only if it is physical and *stable*: a
    // root-finder would otherwise land on the unstable middle branch of a
    // bistable window, or on the unstable focus of a pulsing regime.
    auto accept_fixed_point = [&](const Eigen::VectorXd& x, double resid, SteadyMethod m) -> bool {
        if (!is_physical(x)) {
            sol.what = "converged to an unphysical fixed point";
            return false;
        }
        if (max_jacobian_real_eig(sys, x) > stab_tol) {
            sol.what = "converged to an unstable fixed point (no stable steady state)";
            return false;
        }
        sol.x = x;
        sol.residual_norm = resid;
        sol.method = m;
        sol.converged = true;
        sol.what.clear();
        return true;
    };
    auto try_newton = [&]() -> bool {
        NewtonResult nr = newton_refine(sys, sol.x, tol_resid * 1e-3, tol.newton_max_iter);
        if (!nr.ok) return false;
        return accept_fixed_point(nr.x, nr.residual, SteadyMethod::march_newton);
    };

    if (sol.residual_norm < tol_resid) {
        accept_fixed_point(sol.x, sol.residual_norm, SteadyMethod::march);
        return sol;
    }
    if (sol.residual_norm * t_char < tol.newton_trigger && try_newton()) return sol;

    // Pseudo-transient march: adaptive implicit-Euler steps toward the
    // attractor. Unconditionally stable, so the fast Rabi oscillations never
    // limit the step; the endpoint is certified by the weighted residual and
    // the Newton polish, not by trajectory accuracy.
    double h = 0.3 * t_char;
    const double h_max = 1e7 * t_char;
    double t = 0;
    int newton_cooldown = 0;
    int kicks = 0;
    sol.method = SteadyMethod::march;

    // Above threshold the "off" state is a saddle whose basin boundary the
    // pseudo-transient steps can slide onto; displace along the unstable
    // eigendirection and let the march follow the physical growth. The step
    // stays capped near 1/(2 lambda_+) for a while: implicit Euler with
    // h lambda_+ > 2 would contract back onto the saddle.
    double h_cap = std::numeric_limits<double>::infinity();
    int cap_steps = 0;
    auto kick_off_saddle = [&]() -> bool {
        if (++kicks > 4) return false;
        Eigen::VectorXd v;
        const double lambda_plus = max_jacobian_real_eig(sys, sol.x, &v);
        if (lambda_plus <= stab_tol) return false;  // marginal mode, nothing to escape
        const double scale = 1e-3 * std::max(1.0, sol.x.cwiseAbs().maxCoeff());
        Eigen::VectorXd xp = sol.x + scale * v;
        Eigen::VectorXd xm = sol.x - scale * v;
        const bool pp = is_physical(xp), pm = is_physical(xm);
        if (pp && pm)
            sol.x = (v[0] >= 0) ? xp : xm;  // prefer photon growth
        else if (pp)
            sol.x = xp;
        else if (pm)
            sol.x = xm;
        else
            return false;
        sys.rhs(sol.x, f);
        sol.residual_norm = weighted_residual(sol.x, f);
        h_cap = (lambda_plus > 0) ? 0.5 / lambda_plus : std::numeric_limits<double>::infinity();
        cap_steps = 200;
        h = std::min(0.3 * t_char, h_cap);
        newton_cooldown = 50;
        return true;
    };

    for (int iter = 0; iter < 2000 && t < tol.max_model_time; ++iter) {
        Eigen::MatrixXd W = -fd_jacobian(sys, sol.x);
        W.diagonal().array() += 1.0 / h;
        sys.rhs(sol.x, f);
        Eigen::VectorXd step = Eigen::PartialPivLU<Eigen::MatrixXd>(W).solve(f);

        bool accepted = false;
        if (step.allFinite()) {
            Eigen::VectorXd xt = sol.x + step;
            sys.rhs(xt, ft);
            if (ft.allFinite() && is_physical(xt)) {
                const double rt = weighted_residual(xt, ft);
                if (rt < 1.2 * sol.residual_norm || rt < tol_resid) {
                    sol.x = xt;
                    sol.residual_norm = rt;
                    t += h;
                    sol.elapsed_model_time = t;
                    if (cap_steps > 0) --cap_steps;
                    h = std::min(2.0 * h, cap_steps > 0 ? h_cap : h_max);
                    accepted = true;
                }
            }
        }
        if (!accepted) {
            h *= 0.25;
            if (h < 1e-8 * t_char) {
                // pseudo-transient stagnation: take a time-accurate window
                IntegrateOptions iopt;
                iopt.rtol = tol.rtol;
                iopt.atol = tol.atol;
                IntegrateResult ir = integrate(sys, sol.x, t, t + 100.0 * t_char, iopt);
                if (!ir.ok) {
                    sol.what = "integrator failure: " + ir.what;
                    return sol;
                }
                t = ir.t;
                sol.elapsed_model_time = t;
                sys.rhs(sol.x, f);
                sol.residual_norm = weighted_residual(sol.x, f);
                h = 0.3 * t_char;
            }
            continue;
        }

        if (sol.residual_norm < tol_resid) {
            if (try_newton()) return sol;  // polish to the machine floor
            if (accept_fixed_point(sol.x, sol.residual_norm, SteadyMethod::march)) return sol;
            if (sol.what.find("unstable") != std::string::npos && kick_off_saddle()) continue;
            return sol;  // residual converged onto a rejected fixed point
        }
        if (sol.residual_norm * t_char < tol.newton_trigger && newton_cooldown-- <= 0) {
            if (!try_newton()) {
                newton_cooldown = 10;
            } else {
                return sol;
            }
        }
    }
    if (sol.what.empty()) sol.what = "no convergence within max model time";
    return sol;
}

OdeSystem make_system(const PhysicalParams& p) {
    OdeSystem sys;
    sys.dim = MeanFieldState::dim;
    sys.rhs = [p](const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        derivative_packed(x, dx, p);
    };
    sys.physical = [](const Eigen::VectorXd& x) {
        return MeanFieldState::unpack(x).physical(0.05);
    };
    return sys;
}

SteadyState find_steady(const PhysicalParams& p, const MeanFieldState& init,
                        const SteadyTolerances& tol) {
    if (!init.physical(1e-6))
        throw std::invalid_argument("find_steady: initial state violates closure bounds");
    SteadySolution sol = solve_steady(make_system(p), init.packed(), 1.0 / p.kappa, tol);
    SteadyState out;
    out.state = MeanFieldState::unpack(sol.x);
    out.residual_norm = sol.residual_norm;
    out.elapsed_model_time = sol.elapsed_model_time;
    out.method = sol.method;
    out.converged = sol.converged && out.state.physical(1e-4);
    out.what = sol.what;
    if (sol.converged && !out.converged) out.what = "steady state violates closure bounds";
    return out;
}

}  // namespace superlase
