#include "pgd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pgd/presets.hpp"

namespace pgd::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = origin + ":" + std::to_string(line_no);
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (section.empty()) throw ConfigError(where + ": key outside any [section]");
        if (!value.empty() && value.front() == '"') {
            const auto close = value.find('"', 1);
            if (close == std::string::npos)
                throw ConfigError(where + ": unterminated quoted value");
            value = value.substr(1, close - 1);
        } else {
            const auto hash = value.find('#');
            if (hash != std::string::npos) value = trim(value.substr(0, hash));
        }
        cfg.values_[section + "." + key] = value;
    }
    return cfg;
}

void Config::set(const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: " + key_eq_value);
    const std::string key = trim(key_eq_value.substr(0, eq));
    std::string value = trim(key_eq_value.substr(eq + 1));
    if (key.find('.') == std::string::npos)
        throw ConfigError("override key must be section.key: " + key);
    if (!value.empty() && value.front() == '"' && value.back() == '"' && value.size() >= 2)
        value = value.substr(1, value.size() - 2);
    values_[key] = value;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_number(const std::string& key) const {
    const std::string s = get_string(key);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("config key " + key + " is not a number: '" + s + "'");
    return v;
}

double Config::get_number(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double v = get_number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config key " + key + " is not an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

namespace {

FieldExpr parse_expr(const Config& cfg, const std::string& key,
                     const std::vector<std::string>& vars) {
    const std::string text = cfg.get_string(key);
    try {
        return FieldExpr::parse(text, vars);
    } catch (const ParseError& e) {
        throw ConfigError("config key " + key + ": " + e.what());
    }
}

}  // namespace

ScenarioSpec build_scenario(const Config& cfg) {
    ScenarioSpec spec;
    spec.kind = cfg.get_string("scenario.kind");

    spec.n_markers = cfg.get_int("discretization.n_markers", 65);
    spec.dt = cfg.get_number("discretization.dt", 1e-3);
    spec.t_max = cfg.get_number("discretization.t_max", 1.0);
    spec.grid_n = cfg.get_int("discretization.grid_n", 257);
    spec.h = cfg.get_number("discretization.h", 0.01);
    if (spec.n_markers < 3) throw ConfigError("discretization.n_markers must be >= 3");
    if (!(spec.dt > 0.0)) throw ConfigError("discretization.dt must be positive");
    if (!(spec.t_max > 0.0)) throw ConfigError("discretization.t_max must be positive");

    const double l_min = cfg.get_number("scenario.l_min", -1.0);
    const double l_max = cfg.get_number("scenario.l_max", 1.0);

    if (spec.kind == "riemann") {
        spec.rho = cfg.get_number("scenario.rho", 1.0);
        spec.w = cfg.get_number("scenario.w", 1.0);
        spec.data = presets::symmetric_riemann(spec.rho, spec.w, l_min, l_max);
    } else if (spec.kind == "constant_state") {
        spec.rho = cfg.get_number("scenario.rho", 1.0);
        spec.rho_tilde = cfg.get_number("scenario.rho_tilde", 1.0);
        spec.u = cfg.get_number("scenario.u", 0.0);
        spec.v = cfg.get_number("scenario.v", -1.0);
        spec.k_hat0 = cfg.get_number("scenario.k_hat0", 0.5);
        spec.data = presets::constant_state(spec.rho, spec.rho_tilde, spec.u, spec.v, l_min,
                                            l_max);
        const double P0 = cfg.get_number("scenario.P0", 1.0);
        spec.load = presets::constant_state_load(P0, spec.k_hat0, spec.u, spec.v);
    } else if (spec.kind == "potential_perturbation") {
        spec.eps = cfg.get_number("scenario.eps", 1e-3);
        spec.f_text = cfg.get_string("scenario.f", "a^2");
        try {
            FieldExpr::parse(spec.f_text, {"a", "b"});
        } catch (const ParseError& e) {
            throw ConfigError(std::string("config key scenario.f: ") + e.what());
        }
        spec.data = presets::potential_perturbation(spec.f_text, spec.eps, l_min, l_max);
    } else if (spec.kind == "custom") {
        InitialData d;
        d.minus.rho = parse_expr(cfg, "custom.minus_rho", {"a", "b"});
        d.minus.u = parse_expr(cfg, "custom.minus_u", {"a", "b"});
        d.minus.v = parse_expr(cfg, "custom.minus_v", {"a", "b"});
        d.plus.rho = parse_expr(cfg, "custom.plus_rho", {"a", "b"});
        d.plus.u = parse_expr(cfg, "custom.plus_u", {"a", "b"});
        d.plus.v = parse_expr(cfg, "custom.plus_v", {"a", "b"});
        d.level_set = parse_expr(cfg, "custom.level_set", {"a", "b"});
        d.curve.A = parse_expr(cfg, "custom.curve_a", {"l"});
        d.curve.B = parse_expr(cfg, "custom.curve_b", {"l"});
        d.curve.l_min = l_min;
        d.curve.l_max = l_max;
        const std::string topo = cfg.get_string("custom.topology", "open");
        if (topo == "open")
            d.curve.topology = Topology::Open;
        else if (topo == "periodic")
            d.curve.topology = Topology::Periodic;
        else
            throw ConfigError("custom.topology must be open or periodic");
        d.frame_shift_u = cfg.get_number("custom.frame_shift_u", 0.0);
        d.frame_shift_v = cfg.get_number("custom.frame_shift_v", 0.0);
        d.prepare();
        spec.data = d;
        if (cfg.has("custom.P0")) {
            InitialFrontLoad load;
            load.P0 = parse_expr(cfg, "custom.P0", {"l"});
            load.I0 = cfg.has("custom.I0") ? parse_expr(cfg, "custom.I0", {"l"}) : FieldExpr();
            load.J0 = cfg.has("custom.J0") ? parse_expr(cfg, "custom.J0", {"l"}) : FieldExpr();
            spec.load = load;
        }
    } else {
        throw ConfigError("unknown scenario.kind: " + spec.kind);
    }

    spec.K = cfg.get_number("dispersion.K", 1.0);
    return spec;
}

}  // namespace pgd::config
