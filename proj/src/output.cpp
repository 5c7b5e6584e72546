#include "superlase/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace superlase {

std::string fmt_g17(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string sweep_csv(const std::vector<SweepCsvRow>& rows) {
    std::ostringstream os;
    os << "eta_hz,n_photon,power_w,linewidth_hz_regression,linewidth_hz_analytic,"
          "linewidth_hz_filter,c_bd,converged,direction\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt_g17(*v) : std::string(); };
    for (const auto& r : rows) {
        os << fmt_g17(r.eta_hz) << ',' << fmt_g17(r.n_photon) << ',' << fmt_g17(r.power_w) << ','
           << opt(r.linewidth_hz_regression) << ',' << opt(r.linewidth_hz_analytic) << ','
           << opt(r.linewidth_hz_filter) << ',' << opt(r.c_bd) << ',' << (r.converged ? 1 : 0)
           << ',' << r.direction << '\n';
    }
    return os.str();
}

namespace {

constexpr int plot_w = 720, plot_h = 480;
constexpr int mleft = 70, mright = 20, mtop = 36, mbottom = 46;

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;
    double to_frac(double v) const {
        if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        return (v - lo) / (hi - lo);
    }
};

std::string fmt_tick(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

void axes_svg(std::ostringstream& os, const std::string& title, const std::string& xlabel,
              const std::string& ylabel, const Axis& ax, const Axis& ay) {
    os << "<rect x='" << mleft << "' y='" << mtop << "' width='" << plot_w - mleft - mright
       << "' height='" << plot_h - mtop - mbottom
       << "' fill='none' stroke='black' stroke-width='1'/>\n";
    os << "<text x='" << plot_w / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
       << "</text>\n";
    os << "<text x='" << plot_w / 2 << "' y='" << plot_h - 8
       << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
    os << "<text x='14' y='" << plot_h / 2 << "' text-anchor='middle' font-size='12' transform='rotate(-90 14 "
       << plot_h / 2 << ")'>" << ylabel << "</text>\n";

    auto ticks = [&](const Axis& a) {
        std::vector<double> t;
        if (a.log) {
            for (int e = static_cast<int>(std::ceil(std::log10(a.lo) - 1e-9));
                 e <= static_cast<int>(std::floor(std::log10(a.hi) + 1e-9)); ++e)
                t.push_back(std::pow(10.0, e));
        } else {
            for (int i = 0; i <= 5; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 5.0);
        }
        return t;
    };
    for (double v : ticks(ax)) {
        const double x = mleft + ax.to_frac(v) * (plot_w - mleft - mright);
        os << "<line x1='" << x << "' y1='" << plot_h - mbottom << "' x2='" << x << "' y2='"
           << plot_h - mbottom + 4 << "' stroke='black'/>\n";
        os << "<text x='" << x << "' y='" << plot_h - mbottom + 16
           << "' text-anchor='middle' font-size='10'>"
           << (ax.log ? "1e" + fmt_tick(std::log10(v)) : fmt_tick(v)) << "</text>\n";
    }
    for (double v : ticks(ay)) {
        const double y = plot_h - mbottom - ay.to_frac(v) * (plot_h - mtop - mbottom);
        os << "<line x1='" << mleft - 4 << "' y1='" << y << "' x2='" << mleft << "' y2='" << y
           << "' stroke='black'/>\n";
        os << "<text x='" << mleft - 6 << "' y='" << y + 3 << "' text-anchor='end' font-size='10'>"
           << (ay.log ? "1e" + fmt_tick(std::log10(v)) : fmt_tick(v)) << "</text>\n";
    }
}

std::string plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                 const std::vector<Series>& series, bool logx, bool logy) {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if ((logx && !(x > 0)) || (logy && !(y > 0))) continue;
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (xhi < xlo) { xlo = logx ? 0.1 : 0; xhi = 1; }
    if (yhi < ylo) { ylo = logy ? 0.1 : 0; yhi = 1; }
    if (xhi == xlo) { xhi = logx ? xlo * 10 : xlo + 1; }
    if (yhi == ylo) { yhi = logy ? ylo * 10 : ylo + 1; }
    if (!logy) {
        const double pad = 0.05 * (yhi - ylo);
        ylo -= pad;
        yhi += pad;
    }
    Axis ax{xlo, xhi, logx}, ay{ylo, yhi, logy};

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << plot_w << "' height='" << plot_h
       << "' viewBox='0 0 " << plot_w << ' ' << plot_h << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n";
    axes_svg(os, title, xlabel, ylabel, ax, ay);

    int legend_y = mtop + 14;
    for (const auto& s : series) {
        os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
        bool pen_up = true;
        for (auto [x, y] : s.points) {
            if ((logx && !(x > 0)) || (logy && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)) {
                if (!pen_up) {
                    os << "' />\n<polyline fill='none' stroke='" << s.color
                       << "' stroke-width='1.5' points='";
                    pen_up = true;
                }
                continue;
            }
            const double px = mleft + ax.to_frac(x) * (plot_w - mleft - mright);
            const double py = plot_h - mbottom - ay.to_frac(y) * (plot_h - mtop - mbottom);
            os << px << ',' << py << ' ';
            pen_up = false;
        }
        os << "' />\n";
        os << "<line x1='" << plot_w - mright - 150 << "' y1='" << legend_y << "' x2='"
           << plot_w - mright - 130 << "' y2='" << legend_y << "' stroke='" << s.color
           << "' stroke-width='2'/>\n";
        os << "<text x='" << plot_w - mright - 125 << "' y='" << legend_y + 4
           << "' font-size='11'>" << s.label << "</text>\n";
        legend_y += 16;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Series>& series) {
    return plot(title, xlabel, ylabel, series, true, true);
}

std::string svg_linear(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Series>& series) {
    return plot(title, xlabel, ylabel, series, false, false);
}

std::string svg_heatmap(const std::string& title, const std::string& xlabel,
                        const std::string& ylabel, const HeatMap& map) {
    const size_t nx = map.x.size(), ny = map.y.size();
    if (nx < 2 || ny < 2 || map.values.size() != nx * ny)
        throw std::invalid_argument("svg_heatmap: bad grid");
    double vlo = 1e300, vhi = -1e300;
    for (double v : map.values)
        if (std::isfinite(v) && v > 0) {
            vlo = std::min(vlo, std::log10(v));
            vhi = std::max(vhi, std::log10(v));
        }
    if (vhi <= vlo) { vlo = 0; vhi = 1; }
    Axis ax{map.x.front(), map.x.back(), true}, ay{map.y.front(), map.y.back(), true};

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << plot_w << "' height='" << plot_h
       << "' viewBox='0 0 " << plot_w << ' ' << plot_h << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n";
    for (size_t iy = 0; iy < ny; ++iy)
        for (size_t ix = 0; ix < nx; ++ix) {
            const double v = map.values[iy * nx + ix];
            if (!std::isfinite(v) || !(v > 0)) continue;
            const double f = (std::log10(v) - vlo) / (vhi - vlo);
            const int r = static_cast<int>(30 + 225 * f);
            const int g = static_cast<int>(30 + 90 * (1 - f));
            const int b = static_cast<int>(200 - 160 * f);
            // cell corners at midpoints toward the neighbors
            const double x0f = ix == 0 ? map.x[0] : std::sqrt(map.x[ix - 1] * map.x[ix]);
            const double x1f = ix + 1 == nx ? map.x[nx - 1] : std::sqrt(map.x[ix] * map.x[ix + 1]);
            const double y0f = iy == 0 ? map.y[0] : std::sqrt(map.y[iy - 1] * map.y[iy]);
            const double y1f = iy + 1 == ny ? map.y[ny - 1] : std::sqrt(map.y[iy] * map.y[iy + 1]);
            const double px0 = mleft + ax.to_frac(x0f) * (plot_w - mleft - mright);
            const double px1 = mleft + ax.to_frac(x1f) * (plot_w - mleft - mright);
            const double py0 = plot_h - mbottom - ay.to_frac(y0f) * (plot_h - mtop - mbottom);
            const double py1 = plot_h - mbottom - ay.to_frac(y1f) * (plot_h - mtop - mbottom);
            os << "<rect x='" << px0 << "' y='" << py1 << "' width='" << px1 - px0 << "' height='"
               << py0 - py1 << "' fill='rgb(" << r << ',' << g << ',' << b << ")'/>\n";
        }
    axes_svg(os, title, xlabel, ylabel, ax, ay);
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace superlase
