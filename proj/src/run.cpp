#include "superlase/run.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "superlase/model.hpp"
#include "superlase/observables.hpp"
#include "superlase/output.hpp"
#include "superlase/regression.hpp"
#include "superlase/spectrum.hpp"
#include "superlase/sweep.hpp"
#include "superlase/units.hpp"

namespace superlase {

namespace {

using nlohmann::json;

constexpr int schema_version = 1;

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

SteadyState require_steady(const PhysicalParams& p) {
    SteadyState ss = find_steady(p);
    if (!ss.converged)
        throw NonConverged("steady state did not converge: " + ss.what);
    return ss;
}

// Per-row enrichment of a sweep with the requested linewidth methods.
std::vector<SweepCsvRow> enrich_rows(const PhysicalParams& base, const std::vector<SweepRow>& rows,
                                     const std::string& linewidth_mode, bool coherence,
                                     int threads) {
    std::vector<SweepCsvRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        SweepCsvRow c;
        c.eta_hz = rad_to_hz(r.eta);
        c.n_photon = r.n_photon;
        c.power_w = r.power_w;
        c.converged = r.converged;
        c.direction = r.direction == SweepDirection::up ? "up" : "down";
        if (r.converged && r.n_photon >= n_threshold && linewidth_mode != "none") {
            PhysicalParams p = base;
            p.eta = r.eta;
            SteadyState ss;
            ss.state = r.state;
            ss.converged = true;
            RegressionResult rr = linewidth_regression(p, ss);
            c.linewidth_hz_regression = rad_to_hz(rr.linewidth);
            c.linewidth_hz_analytic = rad_to_hz(rr.analytic_linewidth);
            if (linewidth_mode == "triangle") {
                SpectrumResult sr = scan_spectrum(p, ss, nullptr, {.threads = threads});
                c.linewidth_hz_filter = rad_to_hz(sr.fwhm);
            }
        }
        if (r.converged && coherence && base.omega_tilde() > 0)
            c.c_bd = dark_bright_transform(r.state, base).c_bd;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<SweepCsvRow> tlm_rows_to_csv(const std::vector<TlmSweepRow>& rows) {
    std::vector<SweepCsvRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        SweepCsvRow c;
        c.eta_hz = rad_to_hz(r.eta);
        c.n_photon = r.n_photon;
        c.power_w = r.power_w;
        if (r.linewidth) c.linewidth_hz_regression = rad_to_hz(*r.linewidth);
        c.converged = r.converged;
        out.push_back(std::move(c));
    }
    return out;
}

void emit_sweep_artifacts(const std::string& stem, const RunConfig& cfg, const std::string& dir,
                          const std::vector<SweepCsvRow>& rows) {
    write_file(join(dir, stem + ".csv"), sweep_csv(rows));
    if (cfg.format == "json") {
        json j;
        j["schema_version"] = schema_version;
        j["rows"] = json::array();
        for (const auto& r : rows) {
            json row;
            row["eta_hz"] = r.eta_hz;
            row["n_photon"] = r.n_photon;
            row["power_w"] = r.power_w;
            if (r.linewidth_hz_regression) row["linewidth_hz_regression"] = *r.linewidth_hz_regression;
            if (r.linewidth_hz_analytic) row["linewidth_hz_analytic"] = *r.linewidth_hz_analytic;
            if (r.linewidth_hz_filter) row["linewidth_hz_filter"] = *r.linewidth_hz_filter;
            if (r.c_bd) row["c_bd"] = *r.c_bd;
            row["converged"] = r.converged;
            row["direction"] = r.direction;
            j["rows"].push_back(std::move(row));
        }
        write_file(join(dir, stem + ".json"), j.dump(2) + "\n");
    }
    if (cfg.format == "svg") {
        Series power_up{"power up", "#c02020", {}}, power_dn{"power down", "#208020", {}};
        Series lw{"linewidth (regression)", "#2040c0", {}};
        for (const auto& r : rows) {
            if (!r.converged) continue;
            (r.direction == "up" ? power_up : power_dn).points.push_back({r.eta_hz, r.power_w});
            if (r.linewidth_hz_regression && r.direction == "up")
                lw.points.push_back({r.eta_hz, *r.linewidth_hz_regression});
        }
        std::vector<Series> ps{power_up};
        if (!power_dn.points.empty()) ps.push_back(power_dn);
        write_file(join(dir, stem + "_power.svg"),
                   svg_loglog("output power", "pump eta (Hz)", "power (W)", ps));
        if (!lw.points.empty())
            write_file(join(dir, stem + "_linewidth.svg"),
                       svg_loglog("laser linewidth", "pump eta (Hz)", "linewidth (Hz)", {lw}));
    }
}

int cmd_steady(const RunConfig& cfg, const std::string& dir) {
    PhysicalParams p = cfg.physical_params();
    SteadyState ss = find_steady(p);
    json j;
    j["schema_version"] = schema_version;
    j["eta_hz"] = rad_to_hz(p.eta);
    j["converged"] = ss.converged;
    j["method"] = ss.method == SteadyMethod::march_newton ? "march+newton" : "march";
    j["residual_norm"] = ss.residual_norm;
    j["elapsed_model_time_s"] = ss.elapsed_model_time;
    j["n_photon"] = ss.state.n;
    j["populations"] = {{"gg", ss.state.pgg()},
                        {"xx", ss.state.pxx},
                        {"pp", ss.state.ppp},
                        {"ss", ss.state.pss}};
    if (ss.converged) {
        j["power_w"] = power_watts(ss, p);
        if (p.omega_tilde() > 0) j["c_bd"] = coherence_cbd(ss, p);
    } else {
        j["error"] = ss.what;
    }
    write_file(join(dir, "steady.json"), j.dump(2) + "\n");
    return ss.converged ? exit_ok : exit_nonconverged;
}

int cmd_sweep(const RunConfig& cfg, const std::string& dir, int threads) {
    PhysicalParams p = cfg.physical_params();
    auto grid = log_grid(hz_to_rad(cfg.eta_min_hz), hz_to_rad(cfg.eta_max_hz),
                         cfg.points_per_decade);
    std::vector<SweepCsvRow> rows;
    if (cfg.direction == "up" || cfg.direction == "both") {
        auto up = enrich_rows(p, sweep_eta(p, grid, SweepDirection::up), cfg.linewidth,
                              cfg.coherence, threads);
        rows.insert(rows.end(), up.begin(), up.end());
    }
    if (cfg.direction == "down" || cfg.direction == "both") {
        auto dn = enrich_rows(p, sweep_eta(p, grid, SweepDirection::down), cfg.linewidth,
                              cfg.coherence, threads);
        rows.insert(rows.end(), dn.begin(), dn.end());
    }
    emit_sweep_artifacts("sweep", cfg, dir, rows);
    const bool any = std::any_of(rows.begin(), rows.end(), [](auto& r) { return r.converged; });
    return any ? exit_ok : exit_nonconverged;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& dir, int threads) {
    PhysicalParams p = cfg.physical_params();
    SteadyState ss = require_steady(p);
    FilterConfig explicit_f;
    const bool has_explicit = cfg.zeta_hz > 0 || cfg.kappa_f_hz > 0;
    if (has_explicit) {
        if (!(cfg.zeta_hz > 0) || !(cfg.kappa_f_hz > 0))
            throw std::invalid_argument("spectrum: explicit filter needs both zeta and kappa_f");
        explicit_f.zeta = hz_to_rad(cfg.zeta_hz);
        explicit_f.kappa_f = hz_to_rad(cfg.kappa_f_hz);
    }
    ScanOptions so;
    so.points_pass1 = cfg.points_pass1;
    so.points_pass2 = cfg.points_pass2;
    so.span_estimates = cfg.span_estimates;
    so.span_fwhm = cfg.span_fwhm;
    so.threads = threads;
    SpectrumResult sr;
    try {
        sr = scan_spectrum(p, ss, has_explicit ? &explicit_f : nullptr, so);
    } catch (const std::runtime_error& e) {
        throw NonConverged(e.what());
    }

    std::ostringstream csv;
    csv << "omega_offset_hz,n_filter\n";
    for (const auto& q : sr.points)
        csv << fmt_g17(rad_to_hz(q.omega_b)) << ',' << fmt_g17(q.n_filter) << '\n';
    write_file(join(dir, "spectrum.csv"), csv.str());

    json j;
    j["schema_version"] = schema_version;
    j["eta_hz"] = rad_to_hz(p.eta);
    j["peak_offset_hz"] = rad_to_hz(sr.peak_omega);
    j["fwhm_hz"] = rad_to_hz(sr.fwhm);
    j["fit_quality"] = sr.fit_quality;
    j["kappa_f_hz"] = rad_to_hz(sr.filter.kappa_f);
    j["zeta_hz"] = rad_to_hz(sr.filter.zeta);
    write_file(join(dir, "spectrum.json"), j.dump(2) + "\n");

    if (cfg.format == "svg") {
        Series s{"filter occupation", "#2040c0", {}};
        for (const auto& q : sr.points) s.points.push_back({rad_to_hz(q.omega_b), q.n_filter});
        write_file(join(dir, "spectrum.svg"),
                   svg_linear("filter-cavity spectrum", "offset from omega_0 (Hz)",
                              "<b^dag b>", {s}));
    }
    return exit_ok;
}

int cmd_linewidth(const RunConfig& cfg, const std::string& dir, int threads) {
    PhysicalParams p = cfg.physical_params();
    SteadyState ss = require_steady(p);
    RegressionResult rr = linewidth_regression(p, ss);
    SpectrumResult sr;
    try {
        sr = scan_spectrum(p, ss, nullptr, {.threads = threads});
    } catch (const std::runtime_error& e) {
        throw NonConverged(e.what());
    }
    json j;
    j["schema_version"] = schema_version;
    j["eta_hz"] = rad_to_hz(p.eta);
    j["n_photon"] = ss.state.n;
    j["power_w"] = power_watts(ss, p);
    j["linewidth_hz_regression"] = rad_to_hz(rr.linewidth);
    if (rr.analytic_linewidth > 0) j["linewidth_hz_analytic"] = rad_to_hz(rr.analytic_linewidth);
    j["linewidth_hz_filter"] = rad_to_hz(sr.fwhm);
    j["lasing_offset_hz"] = rad_to_hz(rr.lasing_offset);
    j["filter_peak_offset_hz"] = rad_to_hz(sr.peak_omega);
    write_file(join(dir, "linewidth.json"), j.dump(2) + "\n");
    return exit_ok;
}

int cmd_pulling(const RunConfig& cfg, const std::string& dir) {
    PhysicalParams p = cfg.physical_params();
    SteadyState ss = require_steady(p);
    json j;
    j["schema_version"] = schema_version;
    j["eta_hz"] = rad_to_hz(p.eta);
    const std::pair<const char*, PullingChannel> channels[] = {
        {"cavity", PullingChannel::cavity},
        {"one_photon", PullingChannel::one_photon},
        {"two_photon", PullingChannel::two_photon}};
    for (auto [name, ch] : channels) {
        PullingReport r = pulling_coefficient(ch, p, ss, hz_to_rad(cfg.step_hz));
        j[std::string("c_p_") + name] = {{"value", r.value},
                                         {"step_hz", rad_to_hz(r.step_used)},
                                         {"richardson_error", r.richardson_error}};
    }
    write_file(join(dir, "pulling.json"), j.dump(2) + "\n");
    return exit_ok;
}

int cmd_tlm(const RunConfig& cfg, const std::string& dir) {
    PhysicalParams p = cfg.physical_params();
    TlmParams t = tlm_reduce(p, cfg.variant == "dark" ? TlmVariant::dark : TlmVariant::bright);
    auto grid = log_grid(hz_to_rad(cfg.eta_min_hz), hz_to_rad(cfg.eta_max_hz),
                         cfg.points_per_decade);
    auto rows = tlm_rows_to_csv(tlm_simulate(t, grid, cfg.linewidth != "none"));
    emit_sweep_artifacts("tlm_" + cfg.variant, cfg, dir, rows);
    const bool any = std::any_of(rows.begin(), rows.end(), [](auto& r) { return r.converged; });
    return any ? exit_ok : exit_nonconverged;
}

// ---- figures -------------------------------------------------------------

std::string figure_csv(const std::vector<std::pair<std::string, std::vector<SweepCsvRow>>>& curves) {
    std::ostringstream os;
    os << "curve,eta_hz,n_photon,power_w,linewidth_hz_regression,linewidth_hz_analytic,"
          "linewidth_hz_filter,c_bd,converged,direction\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt_g17(*v) : std::string(); };
    for (const auto& [label, rows] : curves)
        for (const auto& r : rows)
            os << label << ',' << fmt_g17(r.eta_hz) << ',' << fmt_g17(r.n_photon) << ','
               << fmt_g17(r.power_w) << ',' << opt(r.linewidth_hz_regression) << ','
               << opt(r.linewidth_hz_analytic) << ',' << opt(r.linewidth_hz_filter) << ','
               << opt(r.c_bd) << ',' << (r.converged ? 1 : 0) << ',' << r.direction << '\n';
    return os.str();
}

void emit_figure(const std::string& dir, const std::string& name, const std::string& title,
                 const std::string& ylabel,
                 const std::vector<std::pair<std::string, std::vector<SweepCsvRow>>>& curves,
                 bool linewidth_axis) {
    write_file(join(dir, name + ".csv"), figure_csv(curves));
    static const char* colors[] = {"#101010", "#c02020", "#2040c0", "#208020", "#b07000"};
    std::vector<Series> series;
    int ci = 0;
    for (const auto& [label, rows] : curves) {
        Series s{label, colors[ci++ % 5], {}};
        for (const auto& r : rows) {
            if (!r.converged) continue;
            if (linewidth_axis) {
                if (r.linewidth_hz_regression) s.points.push_back({r.eta_hz, *r.linewidth_hz_regression});
            } else {
                s.points.push_back({r.eta_hz, r.power_w});
            }
        }
        series.push_back(std::move(s));
    }
    write_file(join(dir, name + ".svg"),
               svg_loglog(title, "pump eta (Hz)", ylabel, series));
}

int cmd_figures(const RunConfig& cfg, const std::string& dir, int threads) {
    const double s10 = 3.1622776601683795;  // sqrt(10)
    auto grid = log_grid(hz_to_rad(cfg.eta_min_hz), hz_to_rad(cfg.eta_max_hz),
                         cfg.points_per_decade);

    auto sweep_curve = [&](double strength_mhz, double ratio, SweepDirection d,
                           bool with_lw) {
        RunConfig c = cfg;
        PhysicalParams p = c.physical_params();
        p.set_raman(hz_to_rad(strength_mhz * 1e6), ratio);
        auto rows = sweep_eta(p, grid, d);
        return enrich_rows(p, rows, with_lw ? "regression" : "none", false, threads);
    };

    // Fig. 2: power (a-c) and linewidth (d-f) for ratios 1, sqrt(10), 10,
    // each with Raman strengths sqrt(10) and 10 MHz; the 10 MHz curve of the
    // sqrt(10)-ratio panel carries both sweep directions (bistability).
    const struct { const char* pow_name; const char* lw_name; double ratio; } fig2[] = {
        {"fig2a", "fig2d", 1.0}, {"fig2b", "fig2e", s10}, {"fig2c", "fig2f", 10.0}};
    for (const auto& panel : fig2) {
        std::vector<std::pair<std::string, std::vector<SweepCsvRow>>> curves;
        curves.emplace_back("strength_sqrt10MHz_up", sweep_curve(s10, panel.ratio, SweepDirection::up, true));
        curves.emplace_back("strength_10MHz_up", sweep_curve(10.0, panel.ratio, SweepDirection::up, true));
        curves.emplace_back("strength_10MHz_down", sweep_curve(10.0, panel.ratio, SweepDirection::down, true));
        emit_figure(dir, panel.pow_name, std::string("output power (panel ") + panel.pow_name + ")",
                    "power (W)", curves, false);
        emit_figure(dir, panel.lw_name, std::string("linewidth (panel ") + panel.lw_name + ")",
                    "linewidth (Hz)", curves, true);
    }

    // Fig. 4: power and linewidth maps over (eta, ratio) at strength sqrt(10) MHz
    {
        auto ratio_grid = log_grid(1.0, 100.0, 4);
        auto eta_grid = log_grid(hz_to_rad(cfg.eta_min_hz), hz_to_rad(cfg.eta_max_hz), 6);
        HeatMap pw, lw;
        pw.x = lw.x = eta_grid;
        for (auto& v : pw.x) v = rad_to_hz(v);
        lw.x = pw.x;
        pw.y = lw.y = ratio_grid;
        pw.values.assign(eta_grid.size() * ratio_grid.size(), std::nan(""));
        lw.values = pw.values;
        std::ostringstream csv;
        csv << "ratio,eta_hz,n_photon,power_w,linewidth_hz,lasing\n";
        for (size_t iy = 0; iy < ratio_grid.size(); ++iy) {
            RunConfig c = cfg;
            PhysicalParams p = c.physical_params();
            p.set_raman(hz_to_rad(s10 * 1e6), ratio_grid[iy]);
            auto rows = sweep_eta(p, eta_grid, SweepDirection::up);
            for (size_t ix = 0; ix < eta_grid.size(); ++ix) {
                const auto& r = rows[ix];
                double lw_hz = std::nan("");
                const bool lasing = r.converged && r.n_photon >= n_threshold;
                if (lasing) {
                    PhysicalParams pe = p;
                    pe.eta = r.eta;
                    SteadyState ss;
                    ss.state = r.state;
                    ss.converged = true;
                    lw_hz = rad_to_hz(linewidth_regression(pe, ss).linewidth);
                    lw.values[iy * eta_grid.size() + ix] = lw_hz;
                }
                if (r.converged) pw.values[iy * eta_grid.size() + ix] = r.power_w;
                csv << fmt_g17(ratio_grid[iy]) << ',' << fmt_g17(rad_to_hz(r.eta)) << ','
                    << fmt_g17(r.n_photon) << ',' << fmt_g17(r.power_w) << ','
                    << (std::isnan(lw_hz) ? std::string() : fmt_g17(lw_hz)) << ','
                    << (lasing ? 1 : 0) << '\n';
            }
        }
        write_file(join(dir, "fig4a.csv"), csv.str());
        write_file(join(dir, "fig4b.csv"), csv.str());
        write_file(join(dir, "fig4a.svg"),
                   svg_heatmap("power map (W)", "pump eta (Hz)", "ratio", pw));
        write_file(join(dir, "fig4b.svg"),
                   svg_heatmap("linewidth map (Hz)", "pump eta (Hz)", "ratio", lw));
    }

    // Fig. 5: pulling coefficients vs ratio (a-c, eta = 5 kHz) and vs pump
    // (d-f, ratio 10), strength sqrt(10) MHz
    {
        auto one_panel = [&](const std::string& name, PullingChannel ch, bool vs_ratio) {
            std::vector<double> xs = vs_ratio ? log_grid(1.0, 100.0, 4)
                                              : log_grid(hz_to_rad(1e3), hz_to_rad(3e4), 5);
            std::ostringstream csv;
            csv << (vs_ratio ? "ratio" : "eta_hz") << ",c_p,step_hz,richardson_error\n";
            Series s{name, "#2040c0", {}};
            for (double x : xs) {
                RunConfig c = cfg;
                PhysicalParams p = c.physical_params();
                p.set_raman(hz_to_rad(s10 * 1e6), vs_ratio ? x : 10.0);
                p.eta = vs_ratio ? hz_to_rad(5e3) : x;
                try {
                    SteadyState ss = require_steady(p);
                    PullingReport r = pulling_coefficient(ch, p, ss, hz_to_rad(cfg.step_hz));
                    const double xv = vs_ratio ? x : rad_to_hz(x);
                    csv << fmt_g17(xv) << ',' << fmt_g17(r.value) << ','
                        << fmt_g17(rad_to_hz(r.step_used)) << ',' << fmt_g17(r.richardson_error)
                        << '\n';
                    s.points.push_back({xv, r.value});
                } catch (const std::exception&) {
                    // skip non-lasing grid points
                }
            }
            write_file(join(dir, name + ".csv"), csv.str());
            write_file(join(dir, name + ".svg"),
                       svg_loglog(name, vs_ratio ? "ratio" : "pump eta (Hz)",
                                  "pulling coefficient", {s}));
        };
        one_panel("fig5a", PullingChannel::cavity, true);
        one_panel("fig5b", PullingChannel::one_photon, true);
        one_panel("fig5c", PullingChannel::two_photon, true);
        one_panel("fig5d", PullingChannel::cavity, false);
        one_panel("fig5e", PullingChannel::one_photon, false);
        one_panel("fig5f", PullingChannel::two_photon, false);
    }

    // Fig. 7: four-level vs dark and bright TLMs, ratio sqrt(10), strength sqrt(10) MHz
    {
        RunConfig c = cfg;
        PhysicalParams p = c.physical_params();
        p.set_raman(hz_to_rad(s10 * 1e6), s10);
        std::vector<std::pair<std::string, std::vector<SweepCsvRow>>> curves;
        curves.emplace_back("four_level",
                            enrich_rows(p, sweep_eta(p, grid, SweepDirection::up), "regression",
                                        false, threads));
        curves.emplace_back("dark_tlm",
                            tlm_rows_to_csv(tlm_simulate(tlm_reduce(p, TlmVariant::dark), grid)));
        curves.emplace_back("bright_tlm",
                            tlm_rows_to_csv(tlm_simulate(tlm_reduce(p, TlmVariant::bright), grid)));
        emit_figure(dir, "fig7a", "power: four-level vs TLMs", "power (W)", curves, false);
        emit_figure(dir, "fig7b", "linewidth: four-level vs TLMs", "linewidth (Hz)", curves, true);
    }

    // Fig. 8: linewidth and rescaled coherence for strengths sqrt(10), 10, 100 MHz
    {
        std::vector<std::pair<std::string, std::vector<SweepCsvRow>>> lw_curves, cbd_curves;
        for (double smhz : {s10, 10.0, 100.0}) {
            RunConfig c = cfg;
            PhysicalParams p = c.physical_params();
            p.set_raman(hz_to_rad(smhz * 1e6), s10);
            auto rows = enrich_rows(p, sweep_eta(p, grid, SweepDirection::up), "regression", true,
                                    threads);
            std::string label = "strength_" + std::to_string(smhz).substr(0, 5) + "MHz";
            lw_curves.emplace_back(label, rows);
            cbd_curves.emplace_back(label, rows);
        }
        {
            RunConfig c = cfg;
            PhysicalParams p = c.physical_params();
            p.set_raman(hz_to_rad(s10 * 1e6), s10);
            lw_curves.emplace_back("dark_tlm",
                                   tlm_rows_to_csv(tlm_simulate(tlm_reduce(p, TlmVariant::dark), grid)));
        }
        emit_figure(dir, "fig8a", "linewidth vs strength", "linewidth (Hz)", lw_curves, true);
        write_file(join(dir, "fig8b.csv"), figure_csv(cbd_curves));
        std::vector<Series> cs;
        static const char* colors[] = {"#c02020", "#208020", "#2040c0"};
        int ci = 0;
        for (const auto& [label, rows] : cbd_curves) {
            Series s{label, colors[ci++ % 3], {}};
            for (const auto& r : rows)
                if (r.converged && r.c_bd) s.points.push_back({r.eta_hz, *r.c_bd});
            cs.push_back(std::move(s));
        }
        write_file(join(dir, "fig8b.svg"),
                   svg_loglog("rescaled dark/bright coherence", "pump eta (Hz)", "C_BD", cs));
    }
    return exit_ok;
}

}  // namespace

int run_command(const std::string& cmd, const RunConfig& cfg, const RunOptions& opts) {
    const std::string dir = opts.out_dir.empty() ? cfg.path : opts.out_dir;
    std::filesystem::create_directories(dir);
    const int threads = std::max(1, opts.threads);

    if (cmd == "steady") return cmd_steady(cfg, dir);
    if (cmd == "sweep") return cmd_sweep(cfg, dir, threads);
    if (cmd == "spectrum") return cmd_spectrum(cfg, dir, threads);
    if (cmd == "linewidth") return cmd_linewidth(cfg, dir, threads);
    if (cmd == "pulling") return cmd_pulling(cfg, dir);
    if (cmd == "tlm") return cmd_tlm(cfg, dir);
    if (cmd == "figures") return cmd_figures(cfg, dir, threads);
    throw std::invalid_argument("unknown command: " + cmd);
}

}  // namespace superlase
