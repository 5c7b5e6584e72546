#include "superlase/regression.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace superlase {

namespace {
constexpr cplx I{0.0, 1.0};
}

RegressionMatrix build_b(const PhysicalParams& p, const SteadyState& steady) {
    if (!steady.converged)
        throw std::invalid_argument("build_b: steady state not converged");
    const MeanFieldState& s = steady.state;
    const double N = p.n_atoms, k = p.kappa, Oc = p.omega_c_rabi;
    const double Oa = p.omega_alpha, Ob = p.omega_beta;
    const double G = p.big_gamma();
    const double inv = s.pxx - s.pgg();
    const cplx spx = std::conj(s.cxp);  // <sigma_Px>_s
    const cplx ssx = std::conj(s.cxs);  // <sigma_Sx>_s

    RegressionMatrix m;
    m.entries.resize(4, 4);
    m.entries << -2.0 * I * p.delta_c + k, -I * N * Oc, 0.0, 0.0,
                 I * Oc * inv, cplx(p.gamma0 + p.eta), 0.0, -I * Oa,
                 I * Oc * spx, 0.0, -2.0 * I * p.delta_two() + p.eta, -I * Ob,
                 I * Oc * ssx, -I * Oa, -I * Ob, -2.0 * I * p.delta_alpha + G;
    m.entries *= -0.5;
    m.a0.resize(4);
    m.a0 << s.n, s.cxa, s.cpa, s.csa;
    return m;
}

RegressionMatrix build_b_tlm(const TlmParams& p, const TlmState& s, bool converged) {
    if (!converged)
        throw std::invalid_argument("build_b_tlm: steady state not converged");
    const double N = p.n_atoms, k = p.kappa, gc = p.cavity_coupling;
    const double W = p.coherent_coupling;
    const double G = p.gamma_s_total();
    const double inv = s.pee - s.pgg();
    const cplx sse = std::conj(s.ces);

    RegressionMatrix m;
    m.entries.resize(3, 3);
    m.entries << -2.0 * I * p.delta_c + k, -I * N * gc, 0.0,
                 I * gc * inv, cplx(p.decay_eg + p.eta), -I * W,
                 I * gc * sse, -I * W, -2.0 * I * p.delta_s + G;
    m.entries *= -0.5;
    m.a0.resize(3);
    m.a0 << s.n, s.cea, s.csa;
    return m;
}

EigenSystem eig_lr(const RegressionMatrix& m, double balance_scale) {
    const int n = static_cast<int>(m.entries.rows());
    if (!m.entries.allFinite()) throw std::invalid_argument("eig_lr: non-finite matrix");

    // diagonal similarity T = diag(1, t, ..., t): atom rows carry 1/sqrt(N)
    // scaling so the collective coupling appears symmetrically
    Eigen::VectorXd tdiag = Eigen::VectorXd::Ones(n);
    for (int i = 1; i < n; ++i) tdiag[i] = balance_scale;
    Eigen::MatrixXcd bb(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bb(i, j) = m.entries(i, j) * tdiag[j] / tdiag[i];

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(bb);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_lr: eigensolver failed");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto lam = es.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ra = std::abs(lam[a].real()), rb = std::abs(lam[b].real());
        if (ra != rb) return ra < rb;
        return lam[a].imag() < lam[b].imag();
    });

    EigenSystem out;
    out.b = m.entries;
    out.a0 = m.a0;
    out.balance_scale = balance_scale;
    out.lambdas.resize(n);
    out.balanced_right.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.lambdas[i] = lam[order[i]];
        out.balanced_right.col(i) = es.eigenvectors().col(order[i]).normalized();
    }

    // left vectors from inversion: rows of V^-1 are automatically
    // biorthonormal against the columns of V
    Eigen::MatrixXcd left_b = out.balanced_right.inverse();

    out.right_vecs.resize(n, n);
    out.left_vecs.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.right_vecs(i, j) = tdiag[i] * out.balanced_right(i, j);
            out.left_vecs(i, j) = left_b(i, j) / tdiag[j];
        }

    out.weights.resize(n);
    for (int i = 0; i < n; ++i)
        out.weights[i] = out.right_vecs(0, i) * (out.left_vecs.row(i) * m.a0)(0, 0);

    double lmax = 0;
    for (int i = 0; i < n; ++i) lmax = std::max(lmax, std::abs(out.lambdas[i]));
    for (int i = 0; i < n && !out.near_degenerate; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(out.lambdas[i] - out.lambdas[j]) < 1e-8 * lmax) {
                out.near_degenerate = true;
                break;
            }
    return out;
}

cplx select_lambda_min(const EigenSystem& es) {
    const int n = static_cast<int>(es.lambdas.size());
    Eigen::VectorXcd w = es.weights;
    double wmax = 0;
    for (int i = 0; i < n; ++i) wmax = std::max(wmax, std::abs(w[i]));
    if (wmax == 0) {
        // dark cavity (A(0) = 0): weigh against a unit photon seed instead
        for (int i = 0; i < n; ++i) w[i] = es.right_vecs(0, i) * es.left_vecs(i, 0);
        for (int i = 0; i < n; ++i) wmax = std::max(wmax, std::abs(w[i]));
    }
    double lmax = 0;
    for (int i = 0; i < n; ++i) lmax = std::max(lmax, std::abs(es.lambdas[i]));
    const double fuzz = 1e-12 * lmax;

    int best = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(w[i]) < 1e-6 * wmax) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        const double ia = std::abs(es.lambdas[i].imag()), ib = std::abs(es.lambdas[best].imag());
        if (ia < ib - fuzz ||
            (std::abs(ia - ib) <= fuzz &&
             std::abs(es.lambdas[i].real()) < std::abs(es.lambdas[best].real())))
            best = i;
    }
    if (best < 0) throw std::runtime_error("select_lambda_min: all spectral weights vanish");
    return es.lambdas[best];
}

namespace {

int index_of_lambda(const EigenSystem& es, const cplx& lambda) {
    for (int i = 0; i < es.lambdas.size(); ++i)
        if (es.lambdas[i] == lambda) return i;
    throw std::logic_error("index_of_lambda: not a member");
}

// track the eigenvector branch by maximal overlap in balanced coordinates
int track_branch(const EigenSystem& es, const Eigen::VectorXcd& prev_vec, double min_overlap) {
    int best = -1;
    double best_ov = -1;
    for (int i = 0; i < es.lambdas.size(); ++i) {
        double ov = std::abs(prev_vec.dot(es.balanced_right.col(i)));
        if (ov > best_ov) {
            best_ov = ov;
            best = i;
        }
    }
    if (best_ov < min_overlap) return -1;
    return best;
}

}  // namespace

RegressionResult linewidth_regression(const PhysicalParams& p, const SteadyState& steady) {
    if (!steady.converged)
        throw std::invalid_argument("linewidth_regression: steady state not converged");

    const double bal = 1.0 / std::sqrt(p.n_atoms);
    const double dscale =
        std::max({std::abs(p.delta_c), std::abs(p.delta_alpha), std::abs(p.delta_beta)});

    RegressionResult out;
    if (dscale == 0.0) {
        EigenSystem es = eig_lr(build_b(p, steady), bal);
        out.lambda_min = select_lambda_min(es);
    } else {
        // homotopy from the resonant system: scale all detunings by s in [0,1]
        PhysicalParams p0 = p;
        p0.delta_c = p0.delta_alpha = p0.delta_beta = 0;
        SteadyState res0 = find_steady(p0, steady.state);
        if (!res0.converged)
            throw std::runtime_error("linewidth_regression: resonant anchor did not converge");

        int n_steps = 4;
        const int max_steps = 64;
        while (true) {
            EigenSystem es = eig_lr(build_b(p0, res0), bal);
            int idx = index_of_lambda(es, select_lambda_min(es));
            Eigen::VectorXcd vec = es.balanced_right.col(idx);
            SteadyState prev = res0;
            bool ok = true;
            for (int k = 1; k <= n_steps; ++k) {
                PhysicalParams ps = p;
                const double s = static_cast<double>(k) / n_steps;
                ps.delta_c = p.delta_c * s;
                ps.delta_alpha = p.delta_alpha * s;
                ps.delta_beta = p.delta_beta * s;
                SteadyState st = (k == n_steps) ? steady : find_steady(ps, prev.state);
                if (!st.converged)
                    throw std::runtime_error(
                        "linewidth_regression: intermediate steady state did not converge");
                EigenSystem esk = eig_lr(build_b(ps, st), bal);
                int j = track_branch(esk, vec, 0.7);
                if (j < 0) {
                    ok = false;
                    break;
                }
                vec = esk.balanced_right.col(j);
                prev = st;
                if (k == n_steps) out.lambda_min = esk.lambdas[j];
            }
            if (ok) break;
            n_steps *= 2;
            if (n_steps > max_steps)
                throw std::runtime_error(
                    "linewidth_regression: ambiguous eigenvalue tracking; refine the homotopy");
        }
    }

    out.linewidth = 2.0 * std::abs(out.lambda_min.real());
    out.lasing_offset = out.lambda_min.imag();
    if (dscale == 0.0) out.analytic_linewidth = linewidth_analytic(p, steady);
    return out;
}

TlmRegressionResult linewidth_regression_tlm(const TlmParams& p, const TlmState& steady) {
    EigenSystem es = eig_lr(build_b_tlm(p, steady, true), 1.0 / std::sqrt(p.n_atoms));
    TlmRegressionResult out;
    out.lambda_min = select_lambda_min(es);
    out.linewidth = 2.0 * std::abs(out.lambda_min.real());
    out.lasing_offset = out.lambda_min.imag();
    return out;
}

double linewidth_analytic(const PhysicalParams& p, const SteadyState& steady) {
    if (!steady.converged)
        throw std::invalid_argument("linewidth_analytic: steady state not converged");
    if (p.delta_c != 0 || p.delta_alpha != 0 || p.delta_beta != 0)
        throw std::domain_error("linewidth_analytic: defined at zero detunings only");

    const MeanFieldState& s = steady.state;
    const double N = p.n_atoms, k = p.kappa, Oc = p.omega_c_rabi;
    const double Oa = p.omega_alpha, Ob = p.omega_beta;
    const double g0 = p.gamma0, eta = p.eta;
    const double G = p.big_gamma();
    const double F = p.pump_f();

    const double inv = s.pxx - s.pgg();
    const double im_ssx = -s.cxs.imag();  // Im <sigma_Sx>_s
    const double re_spx = s.cxp.real();   // Re <sigma_Px>_s

    const double noc2 = N * Oc * Oc;
    const double num_terms[] = {k, noc2 / F * eta * Oa * im_ssx, noc2 / F * Oa * Ob * re_spx,
                                -noc2 / F * (eta * G + Ob * Ob) * inv};
    const double den_terms[] = {1.0, k / F * (eta * G + (g0 + eta) * (G + eta) + Oa * Oa + Ob * Ob),
                                noc2 / F * Oa * im_ssx, -noc2 / F * (G + eta) * inv};

    double num = 0, num_scale = 0, den = 0, den_scale = 0;
    for (double t : num_terms) {
        num += t;
        num_scale += std::abs(t);
    }
    for (double t : den_terms) {
        den += t;
        den_scale += std::abs(t);
    }
    if (std::abs(den) < 1e-12 * den_scale)
        throw std::domain_error("linewidth_analytic: singular denominator");
    (void)num_scale;
    return std::abs(num / den);
}

std::vector<std::pair<double, double>> lorentzian_spectrum(const EigenSystem& es,
                                                           const std::vector<double>& grid) {
    const int n = static_cast<int>(es.lambdas.size());
    double lmax = 0;
    for (int i = 0; i < n; ++i) lmax = std::max(lmax, std::abs(es.lambdas[i]));
    for (int i = 0; i < n; ++i)
        if (es.lambdas[i].real() > 1e-10 * lmax)
            throw std::runtime_error("lorentzian_spectrum: unstable eigenvalue (Re > 0)");

    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());

    if (!es.near_degenerate) {
        for (double w : grid) {
            cplx acc = 0;
            for (int i = 0; i < n; ++i) acc += es.weights[i] / (I * w - es.lambdas[i]);
            out.emplace_back(w, 2.0 * acc.real());
        }
        return out;
    }

    // Degenerate fallback: propagate A(t) = expm(B t) A(0) and integrate
    // S(w) = 2 Re int_0^T A_1(t) e^{-i w t} dt with T covering the slowest decay.
    double slowest = lmax;
    for (int i = 0; i < n; ++i)
        slowest = std::min(slowest, std::abs(es.lambdas[i].real()));
    if (slowest <= 0) slowest = lmax > 0 ? 1e-6 * lmax : 1.0;
    const double t_end = 40.0 / slowest;
    double wspan = 0;
    for (double w : grid) wspan = std::max(wspan, std::abs(w));
    const long steps = std::max(4000L, static_cast<long>(8.0 * wspan * t_end / two_pi));
    const double dt = t_end / steps;

    Eigen::MatrixXcd prop = (es.b * dt).exp();
    std::vector<cplx> a1(steps + 1);
    Eigen::VectorXcd a = es.a0;
    for (long k = 0; k <= steps; ++k) {
        a1[k] = a[0];
        a = prop * a;
    }
    for (double w : grid) {
        cplx acc = 0.5 * a1[0];
        for (long k = 1; k < steps; ++k) acc += a1[k] * std::exp(-I * w * (k * dt));
        acc += 0.5 * a1[steps] * std::exp(-I * w * (steps * dt));
        out.emplace_back(w, 2.0 * (acc * dt).real());
    }
    return out;
}

}  // namespace superlase
