#include "superlase/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace superlase {

namespace {

OdeSystem make_filter_system(const PhysicalParams& p, const FilterConfig& f, double omega_b) {
    OdeSystem sys;
    sys.dim = FilterAugmentedState::dim;
    sys.rhs = [p, f, omega_b](const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        filter_derivative_packed(x, dx, p, f, omega_b);
    };
    sys.physical = [](const Eigen::VectorXd& x) {
        return MeanFieldState::unpack(x.head(MeanFieldState::dim)).physical(0.05);
    };
    return sys;
}

}  // namespace

double extend_and_solve(const PhysicalParams& p, const FilterConfig& f, double omega_b,
                        const SteadyState& laser_steady) {
    if (!laser_steady.converged)
        throw std::invalid_argument("extend_and_solve: laser steady state not converged");
    f.validate(p.kappa);

    OdeSystem sys = make_filter_system(p, f, omega_b);
    constexpr int nl = MeanFieldState::dim;
    constexpr int nf = FilterAugmentedState::dim - nl;

    // The probe sector is linear in its own correlators given the laser state:
    // extract M and d column by column and solve M v = -d for the seed.
    FilterAugmentedState seed_state;
    seed_state.laser = laser_steady.state;
    Eigen::VectorXd x0 = seed_state.packed();
    Eigen::VectorXd dx(sys.dim);
    sys.rhs(x0, dx);
    Eigen::VectorXd d = dx.tail(nf);
    Eigen::MatrixXd M(nf, nf);
    for (int j = 0; j < nf; ++j) {
        Eigen::VectorXd xj = x0;
        xj[nl + j] = 1.0;
        sys.rhs(xj, dx);
        M.col(j) = dx.tail(nf) - d;
    }
    Eigen::VectorXd v = Eigen::PartialPivLU<Eigen::MatrixXd>(M).solve(-d);
    if (!v.allFinite())
        throw std::runtime_error("extend_and_solve: singular probe-sector system");
    Eigen::VectorXd x = x0;
    x.tail(nf) = v;

    // Newton on the joint system picks up the O(zeta^2) back-action.
    const double tol_resid = 1e-9 * p.kappa;
    NewtonResult nr = newton_refine(sys, x, tol_resid, 25);
    if (!nr.ok)
        throw std::runtime_error("extend_and_solve: filter-augmented system not converged");

    const double nf_val = FilterAugmentedState::unpack(nr.x).nf;
    if (nf_val < -1e-12)
        throw std::runtime_error("extend_and_solve: negative probe occupation beyond tolerance");
    return std::max(nf_val, 0.0);
}

LorentzFit fit_lorentzian(const std::vector<SpectrumPoint>& pts, double floor_fraction) {
    double peak = 0;
    for (const auto& q : pts) peak = std::max(peak, q.n_filter);
    if (!(peak > 0)) throw std::invalid_argument("fit_lorentzian: empty spectrum");

    std::vector<SpectrumPoint> sel;
    for (const auto& q : pts)
        if (q.n_filter >= floor_fraction * peak) sel.push_back(q);
    if (sel.size() < 5) throw std::invalid_argument("fit_lorentzian: too few points above floor");

    // linearized seed: 1/y = (1/A)(1 + (w - w0)^2 / g^2) is quadratic in w
    Eigen::MatrixXd X(sel.size(), 3);
    Eigen::VectorXd y(sel.size());
    const double wref = sel[sel.size() / 2].omega_b;
    double wscale = 0;
    for (const auto& q : sel) wscale = std::max(wscale, std::abs(q.omega_b - wref));
    if (wscale == 0) throw std::invalid_argument("fit_lorentzian: degenerate grid");
    for (size_t i = 0; i < sel.size(); ++i) {
        const double w = (sel[i].omega_b - wref) / wscale;
        X(i, 0) = 1.0;
        X(i, 1) = w;
        X(i, 2) = w * w;
        y[i] = 1.0 / sel[i].n_filter;
    }
    Eigen::Vector3d c = X.colPivHouseholderQr().solve(y);
    if (!(c[2] > 0)) throw std::runtime_error("fit_lorentzian: no curvature at the peak");
    double w0 = -c[1] / (2.0 * c[2]);
    double inv_a = c[0] - c[1] * c[1] / (4.0 * c[2]);
    if (!(inv_a > 0)) inv_a = 1.0 / peak;
    double a = 1.0 / inv_a;
    double g2 = inv_a / c[2];  // gamma^2 (hwhm^2) in scaled units

    // Gauss-Newton in the direct domain on (a, w0, g2)
    for (int it = 0; it < 30; ++it) {
        Eigen::MatrixXd J(sel.size(), 3);
        Eigen::VectorXd r(sel.size());
        for (size_t i = 0; i < sel.size(); ++i) {
            const double w = (sel[i].omega_b - wref) / wscale;
            const double u = (w - w0);
            const double den = 1.0 + u * u / g2;
            const double model = a / den;
            r[i] = sel[i].n_filter - model;
            J(i, 0) = 1.0 / den;
            J(i, 1) = a * (2.0 * u / g2) / (den * den);
            J(i, 2) = a * (u * u / (g2 * g2)) / (den * den);
        }
        Eigen::Vector3d step = J.colPivHouseholderQr().solve(r);
        a += step[0];
        w0 += step[1];
        g2 += step[2];
        if (!(g2 > 0) || !(a > 0))
            throw std::runtime_error("fit_lorentzian: fit diverged");
        if (step.cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, std::abs(a))) break;
    }

    double ssq = 0;
    for (const auto& q : sel) {
        const double w = (q.omega_b - wref) / wscale;
        const double u = w - w0;
        const double model = a / (1.0 + u * u / g2);
        ssq += (q.n_filter - model) * (q.n_filter - model);
    }

    LorentzFit fit;
    fit.center = wref + w0 * wscale;
    fit.fwhm = 2.0 * std::sqrt(g2) * wscale;
    fit.height = a;
    fit.rms_residual = std::sqrt(ssq / sel.size()) / a;
    return fit;
}

namespace {

std::vector<SpectrumPoint> scan_grid(const PhysicalParams& p, const FilterConfig& f,
                                     const SteadyState& steady, const std::vector<double>& grid,
                                     int threads) {
    std::vector<SpectrumPoint> pts(grid.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex err_mutex;

    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            if (failed.load()) return;
            try {
                pts[i] = {grid[i], extend_and_solve(p, f, grid[i], steady)};
            } catch (const std::exception& e) {
                std::scoped_lock lk(err_mutex);
                failed.store(true);
                error_msg = e.what();
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error("scan_spectrum: " + error_msg);
    return pts;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / (n - 1);
    return g;
}

// interior local maxima above a tenth of the global peak
std::vector<double> local_maxima(const std::vector<SpectrumPoint>& pts) {
    double peak = 0;
    for (const auto& q : pts) peak = std::max(peak, q.n_filter);
    std::vector<double> out;
    for (size_t i = 1; i + 1 < pts.size(); ++i)
        if (pts[i].n_filter > pts[i - 1].n_filter && pts[i].n_filter > pts[i + 1].n_filter &&
            pts[i].n_filter > 0.1 * peak)
            out.push_back(pts[i].omega_b);
    return out;
}

}  // namespace

SpectrumResult scan_spectrum(const PhysicalParams& p, const SteadyState& laser_steady,
                             const FilterConfig* explicit_filter, const ScanOptions& opts) {
    if (!laser_steady.converged)
        throw std::invalid_argument("scan_spectrum: laser steady state not converged");

    // width estimate and peak guess from the regression eigenvalue
    RegressionResult rr = linewidth_regression(p, laser_steady);
    double est = (p.delta_c == 0 && p.delta_alpha == 0 && p.delta_beta == 0)
                     ? linewidth_analytic(p, laser_steady)
                     : rr.linewidth;
    if (!(est > 0)) est = rr.linewidth;
    if (!(est > 0)) throw std::runtime_error("scan_spectrum: no linewidth estimate");
    const double center = rr.lasing_offset;

    FilterConfig f;
    if (explicit_filter) {
        f = *explicit_filter;
    } else {
        f.kappa_f = std::min(est / 50.0, p.kappa / 100.0);
        f.zeta = f.kappa_f / 10.0;
    }
    f.validate(p.kappa);

    // pass 1: wide scan sized by the estimate
    std::vector<double> grid1 =
        linspace(center - opts.span_estimates * est, center + opts.span_estimates * est,
                 opts.points_pass1);
    std::vector<SpectrumPoint> pts1 = scan_grid(p, f, laser_steady, grid1, opts.threads);

    std::vector<double> peaks = local_maxima(pts1);
    if (peaks.size() > 1) {
        std::string msg = "scan_spectrum: multiple spectral peaks at offsets (Hz):";
        for (double w : peaks) msg += " " + std::to_string(w / two_pi);
        throw std::runtime_error(msg);
    }

    LorentzFit fit1 = fit_lorentzian(pts1);

    // pass 2: refine around the fitted peak
    std::vector<double> grid2 = linspace(fit1.center - opts.span_fwhm * fit1.fwhm,
                                         fit1.center + opts.span_fwhm * fit1.fwhm,
                                         opts.points_pass2);
    std::vector<SpectrumPoint> pts2 = scan_grid(p, f, laser_steady, grid2, opts.threads);
    LorentzFit fit2 = fit_lorentzian(pts2);

    SpectrumResult out;
    out.points = std::move(pts2);
    out.peak_omega = fit2.center;
    out.fwhm = fit2.fwhm;
    out.fit_quality = fit2.rms_residual;
    out.filter = f;
    return out;
}

}  // namespace superlase
