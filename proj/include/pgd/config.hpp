#pragma once

#include <map>
#include <optional>
#include <string>

#include "pgd/front_tracker.hpp"
#include "pgd/scenario.hpp"

namespace pgd {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace config {

/// Flat sectioned key-value text:
///   # comment
///   [section]
///   key = value            (number or bare word)
///   expr = "a + b^2"       (expression text, quoted)
/// Keys are addressed as "section.key". Values stay strings until queried.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    /// Applies a "section.key=value" override.
    void set(const std::string& key_eq_value);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Fully resolved experiment description built from a Config.
struct ScenarioSpec {
    std::string kind;  // riemann | constant_state | potential_perturbation | custom
    InitialData data;
    std::optional<InitialFrontLoad> load;

    // discretization
    int n_markers = 65;
    double dt = 1e-3;
    double t_max = 1.0;
    int grid_n = 257;
    double h = 0.01;

    // scalar parameters, kept for reporting
    double rho = 1.0, rho_tilde = 1.0;
    double u = 0.0, v = 0.0, w = 0.0;
    double eps = 0.0, k_hat0 = 0.5, K = 1.0;
    std::string f_text;  // perturbation profile f(a)
};

/// Builds the initial data and discretization from the [scenario],
/// [discretization] and kind-specific sections. Expression errors are
/// rethrown as ConfigError naming the offending key and position.
ScenarioSpec build_scenario(const Config& cfg);

}  // namespace config
}  // namespace pgd
