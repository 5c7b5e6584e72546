#include "superlase/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "superlase/units.hpp"

namespace superlase {

PhysicalParams RunConfig::physical_params() const {
    PhysicalParams p;
    p.n_atoms = n_atoms;
    p.kappa = hz_to_rad(kappa_hz);
    p.gamma0 = hz_to_rad(gamma_0_hz);
    p.gamma_x = hz_to_rad(gamma_x_hz);
    p.gamma_p = hz_to_rad(gamma_p_hz);
    p.eta = hz_to_rad(eta_hz);
    p.omega_c_rabi = hz_to_rad(omega_c_hz);
    if (raman_explicit) {
        p.omega_alpha = hz_to_rad(omega_alpha_hz);
        p.omega_beta = hz_to_rad(omega_beta_hz);
    } else {
        p.set_raman(hz_to_rad(strength_hz), ratio);
    }
    p.delta_c = hz_to_rad(delta_c_hz);
    p.delta_alpha = hz_to_rad(delta_alpha_hz);
    p.delta_beta = hz_to_rad(delta_beta_hz);
    p.lasing_wavelength = wavelength_nm * 1e-9;
    p.validate();
    return p;
}

void RunConfig::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
    if (!(eta_min_hz > 0) || !(eta_max_hz > eta_min_hz)) bad("need 0 < sweep.eta_min < sweep.eta_max");
    if (!(points_per_decade >= 1)) bad("sweep.points_per_decade must be >= 1");
    if (direction != "up" && direction != "down" && direction != "both")
        bad("sweep.direction must be up|down|both");
    if (linewidth != "none" && linewidth != "regression" && linewidth != "triangle")
        bad("sweep.linewidth must be none|regression|triangle");
    if (variant != "dark" && variant != "bright") bad("tlm.variant must be dark|bright");
    if (format != "csv" && format != "json" && format != "svg")
        bad("output.format must be csv|json|svg");
    if (points_pass1 < 5 || points_pass2 < 5) bad("spectrum grids need at least 5 points");
    if (!(step_hz > 0)) bad("pulling.step must be > 0");
    physical_params();  // field-level checks
}

namespace {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("config line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& raw, int line) {
    std::string s = raw;
    double mult = 1.0;
    if (!s.empty() && (s.back() == 'k' || s.back() == 'M')) {
        mult = (s.back() == 'k') ? 1e3 : 1e6;
        s.pop_back();
    }
    if (s.empty()) fail(line, "malformed number '" + raw + "'");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        fail(line, "malformed number '" + raw + "' (unit suffixes: none, k, M)");
    return v * mult;
}

bool parse_bool(const std::string& s, int line) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    fail(line, "expected true|false, got '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    bool saw_alpha = false, saw_beta = false, saw_strength = false, saw_ratio = false;

    using Setter = std::function<void(RunConfig&, const std::string&, int)>;
    auto num = [](double RunConfig::* field) {
        return Setter([field](RunConfig& cfg, const std::string& v, int line) {
            cfg.*field = parse_number(v, line);
        });
    };
    auto integer = [](int RunConfig::* field) {
        return Setter([field](RunConfig& cfg, const std::string& v, int line) {
            const double d = parse_number(v, line);
            if (d != std::floor(d)) fail(line, "expected an integer");
            cfg.*field = static_cast<int>(d);
        });
    };
    auto text_field = [](std::string RunConfig::* field) {
        return Setter([field](RunConfig& cfg, const std::string& v, int) { cfg.*field = v; });
    };

    const std::map<std::string, std::map<std::string, Setter>> schema = {
        {"atoms",
         {{"n", num(&RunConfig::n_atoms)},
          {"gamma_x", num(&RunConfig::gamma_x_hz)},
          {"gamma_p", num(&RunConfig::gamma_p_hz)},
          {"gamma_0", num(&RunConfig::gamma_0_hz)}}},
        {"cavity",
         {{"kappa", num(&RunConfig::kappa_hz)},
          {"omega_c", num(&RunConfig::omega_c_hz)},
          {"delta_c", num(&RunConfig::delta_c_hz)},
          {"wavelength_nm", num(&RunConfig::wavelength_nm)}}},
        {"raman",
         {{"strength", Setter([&saw_strength](RunConfig& cfg, const std::string& v, int line) {
               cfg.strength_hz = parse_number(v, line);
               saw_strength = true;
           })},
          {"ratio", Setter([&saw_ratio](RunConfig& cfg, const std::string& v, int line) {
               cfg.ratio = parse_number(v, line);
               saw_ratio = true;
           })},
          {"omega_alpha", Setter([&saw_alpha](RunConfig& cfg, const std::string& v, int line) {
               cfg.omega_alpha_hz = parse_number(v, line);
               saw_alpha = true;
           })},
          {"omega_beta", Setter([&saw_beta](RunConfig& cfg, const std::string& v, int line) {
               cfg.omega_beta_hz = parse_number(v, line);
               saw_beta = true;
           })},
          {"delta_alpha", num(&RunConfig::delta_alpha_hz)},
          {"delta_beta", num(&RunConfig::delta_beta_hz)}}},
        {"pump", {{"eta", num(&RunConfig::eta_hz)}}},
        {"sweep",
         {{"eta_min", num(&RunConfig::eta_min_hz)},
          {"eta_max", num(&RunConfig::eta_max_hz)},
          {"points_per_decade", num(&RunConfig::points_per_decade)},
          {"direction", text_field(&RunConfig::direction)},
          {"linewidth", text_field(&RunConfig::linewidth)},
          {"coherence", Setter([](RunConfig& cfg, const std::string& v, int line) {
               cfg.coherence = parse_bool(v, line);
           })}}},
        {"spectrum",
         {{"zeta", Setter([](RunConfig& cfg, const std::string& v, int line) {
               cfg.zeta_hz = (v == "auto") ? 0 : parse_number(v, line);
           })},
          {"kappa_f", Setter([](RunConfig& cfg, const std::string& v, int line) {
               cfg.kappa_f_hz = (v == "auto") ? 0 : parse_number(v, line);
           })},
          {"points_pass1", integer(&RunConfig::points_pass1)},
          {"points_pass2", integer(&RunConfig::points_pass2)},
          {"span_estimates", num(&RunConfig::span_estimates)},
          {"span_fwhm", num(&RunConfig::span_fwhm)}}},
        {"pulling", {{"step", num(&RunConfig::step_hz)}}},
        {"tlm", {{"variant", text_field(&RunConfig::variant)}}},
        {"output",
         {{"format", text_field(&RunConfig::format)}, {"path", text_field(&RunConfig::path)}}},
    };

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema.count(section)) fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        if (section.empty()) fail(line_no, "key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail(line_no, "missing value for '" + key + "'");
        const auto& keys = schema.at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) fail(line_no, "unknown key '" + key + "' in section [" + section + "]");
        it->second(c, value, line_no);
    }

    if (saw_alpha != saw_beta)
        throw ParseError("config: omega_alpha and omega_beta must be given together");
    if (saw_alpha && (saw_strength || saw_ratio))
        throw ParseError("config: give either raman strength/ratio or omega_alpha/omega_beta");
    c.raman_explicit = saw_alpha;

    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace

std::string emit_config(const RunConfig& c) {
    std::ostringstream os;
    os << "[atoms]\n"
       << "n = " << fmt17(c.n_atoms) << "\n"
       << "gamma_x = " << fmt17(c.gamma_x_hz) << "\n"
       << "gamma_p = " << fmt17(c.gamma_p_hz) << "\n"
       << "gamma_0 = " << fmt17(c.gamma_0_hz) << "\n\n";
    os << "[cavity]\n"
       << "kappa = " << fmt17(c.kappa_hz) << "\n"
       << "omega_c = " << fmt17(c.omega_c_hz) << "\n"
       << "delta_c = " << fmt17(c.delta_c_hz) << "\n"
       << "wavelength_nm = " << fmt17(c.wavelength_nm) << "\n\n";
    os << "[raman]\n";
    if (c.raman_explicit) {
        os << "omega_alpha = " << fmt17(c.omega_alpha_hz) << "\n"
           << "omega_beta = " << fmt17(c.omega_beta_hz) << "\n";
    } else {
        os << "strength = " << fmt17(c.strength_hz) << "\n"
           << "ratio = " << fmt17(c.ratio) << "\n";
    }
    os << "delta_alpha = " << fmt17(c.delta_alpha_hz) << "\n"
       << "delta_beta = " << fmt17(c.delta_beta_hz) << "\n\n";
    os << "[pump]\n"
       << "eta = " << fmt17(c.eta_hz) << "\n\n";
    os << "[sweep]\n"
       << "eta_min = " << fmt17(c.eta_min_hz) << "\n"
       << "eta_max = " << fmt17(c.eta_max_hz) << "\n"
       << "points_per_decade = " << fmt17(c.points_per_decade) << "\n"
       << "direction = " << c.direction << "\n"
       << "linewidth = " << c.linewidth << "\n"
       << "coherence = " << (c.coherence ? "true" : "false") << "\n\n";
    os << "[spectrum]\n"
       << "zeta = " << (c.zeta_hz == 0 ? std::string("auto") : fmt17(c.zeta_hz)) << "\n"
       << "kappa_f = " << (c.kappa_f_hz == 0 ? std::string("auto") : fmt17(c.kappa_f_hz)) << "\n"
       << "points_pass1 = " << c.points_pass1 << "\n"
       << "points_pass2 = " << c.points_pass2 << "\n"
       << "span_estimates = " << fmt17(c.span_estimates) << "\n"
       << "span_fwhm = " << fmt17(c.span_fwhm) << "\n\n";
    os << "[pulling]\n"
       << "step = " << fmt17(c.step_hz) << "\n\n";
    os << "[tlm]\n"
       << "variant = " << c.variant << "\n\n";
    os << "[output]\n"
       << "format = " << c.format << "\n"
       << "path = " << c.path << "\n";
    return os.str();
}

}  // namespace superlase
