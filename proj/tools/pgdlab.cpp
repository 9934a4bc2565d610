#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pgd/acceptance.hpp"
#include "pgd/config.hpp"
#include "pgd/constant_state.hpp"
#include "pgd/csv.hpp"
#include "pgd/dispersion.hpp"
#include "pgd/front_tracker.hpp"
#include "pgd/oracle.hpp"
#include "pgd/presets.hpp"
#include "pgd/variational.hpp"

namespace {

using namespace pgd;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "scenario config file");
    if (config_required) c->required();
    cmd->add_option("--set", opts.overrides, "override section.key=value (repeatable)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker threads (reserved; runs are single-threaded)");
}

config::Config load_config(const CommonOpts& opts) {
    config::Config cfg = opts.config_path.empty()
                             ? config::Config::parse_string("", "<empty>")
                             : config::Config::parse_file(opts.config_path);
    for (const auto& o : opts.overrides) cfg.set(o);
    return cfg;
}

void write_file(const CommonOpts& opts, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(opts.out_dir);
    const auto path = std::filesystem::path(opts.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

struct Tracked {
    config::ScenarioSpec spec;
    FrontHistory history;
};

Tracked run_tracker(const config::Config& cfg) {
    Tracked t{config::build_scenario(cfg), {}};
    FrontTracker tr(t.spec.data);
    t.history = tr.run(tr.initialize(t.spec.n_markers, t.spec.load), t.spec.dt, t.spec.t_max);
    return t;
}

int cmd_simulate(const CommonOpts& opts) {
    const config::Config cfg = load_config(opts);
    Tracked t = run_tracker(cfg);
    FrontTracker tr(t.spec.data);
    write_file(opts, "simulate.csv", csv::history_csv(tr, t.history));

    const FrontState& last = t.history.states.back();
    double p_min = last.markers.front().P, p_max = p_min;
    for (const auto& m : last.markers) {
        p_min = std::min(p_min, m.P);
        p_max = std::max(p_max, m.P);
    }
    std::string summary = "{\"kind\":\"" + t.spec.kind + "\",\"t_end\":" + csv::num(last.t) +
                          ",\"n_markers\":" + std::to_string(last.size()) +
                          ",\"P_min\":" + csv::num(p_min) + ",\"P_max\":" + csv::num(p_max) +
                          "}\n";
    write_file(opts, "simulate_summary.json", summary);
    std::cout << summary;
    return 0;
}

int cmd_variational(const CommonOpts& opts) {
    const config::Config cfg = load_config(opts);
    const config::ScenarioSpec spec = config::build_scenario(cfg);
    if (spec.kind != "potential_perturbation")
        throw ConfigError("variational requires scenario.kind = potential_perturbation");
    const variational::Potential pot =
        variational::Potential::perturbation(FieldExpr::parse(spec.f_text), spec.eps);

    const double t = cfg.get_number("variational.t", 0.5);
    const double x0 = cfg.get_number("variational.x_min", -0.4);
    const double x1 = cfg.get_number("variational.x_max", 0.4);
    const int nx = cfg.get_int("variational.n_x", 17);
    const double y_lo = cfg.get_number("variational.y_lo", 0.3 * t);
    const double y_hi = cfg.get_number("variational.y_hi", 0.7 * t);
    const double half = cfg.get_number("variational.box_half_width", 2.0);
    const variational::SearchBox box{-half, half, -half, half};

    std::ostringstream out;
    out << "# schema=1\n";
    out << "x,y_singular,psi,n_minimizers\n";
    for (int i = 0; i < nx; ++i) {
        const double x = x0 + (x1 - x0) * (nx > 1 ? i / double(nx - 1) : 0.5);
        const double ys = variational::singular_point(pot, t, x, y_lo, y_hi, box, 1e-10,
                                                      spec.grid_n);
        const auto ms = variational::hopf_lax(pot, t, x, ys, box, spec.grid_n);
        out << csv::num(x) << ',' << csv::num(ys) << ',' << csv::num(ms.psi) << ','
            << ms.minimizers.size() << '\n';
    }
    write_file(opts, "variational.csv", out.str());
    std::cout << "singular surface sampled at " << nx << " abscissae\n";
    return 0;
}

int cmd_compare_surfaces(const CommonOpts& opts) {
    const config::Config cfg = load_config(opts);
    Tracked t = run_tracker(cfg);
    if (t.spec.kind != "potential_perturbation")
        throw ConfigError("compare-surfaces requires scenario.kind = potential_perturbation");
    const FieldExpr f = FieldExpr::parse(t.spec.f_text);
    const variational::Potential pot = variational::Potential::perturbation(f, t.spec.eps);
    const auto defects = variational::surface_coincidence_defects(t.history, pot);

    const FrontState& last = t.history.states.back();
    std::ostringstream out;
    out << "# schema=1\n";
    out << "l,x_shock,y_shock,x_first_order,y_first_order,gap_first_order,defect\n";
    for (std::size_t i = 0; i < last.size(); ++i) {
        const FrontMarker& m = last.markers[i];
        const Vec2 rh =
            variational::rh_perturbation_surface(f, t.spec.eps, last.t, m.l);
        const double gap = variational::first_order_surface_gap(f, t.spec.eps, last.t, m.l);
        out << csv::num(m.l) << ',' << csv::num(m.x) << ',' << csv::num(m.y) << ','
            << csv::num(rh.x()) << ',' << csv::num(rh.y()) << ',' << csv::num(gap) << ','
            << csv::num(defects[i]) << '\n';
    }
    write_file(opts, "compare_surfaces.csv", out.str());
    std::cout << "first-order surface gap at l=0: "
              << csv::num(variational::first_order_surface_gap(f, t.spec.eps, last.t, 0.0)) << "\n";
    return 0;
}

int cmd_constant_state(const CommonOpts& opts) {
    const config::Config cfg = load_config(opts);
    Tracked t = run_tracker(cfg);
    if (t.spec.kind != "constant_state")
        throw ConfigError("constant-state requires scenario.kind = constant_state");
    const constant_state::Params par{t.spec.rho, t.spec.rho_tilde, t.spec.u, t.spec.v};
    const double G = constant_state::front_G(par, 1.0, 0.0);
    const double P0 = t.history.at_step(0).markers[0].P;
    const double kap = constant_state::kappa(par.rho, par.rho_tilde);
    const std::size_t mid = t.history.at_step(0).size() / 2;

    std::vector<double> times, k_hats;
    std::ostringstream out;
    out << "# schema=1\n";
    out << "t,P_numeric,P_closed,k_hat,kappa\n";
    for (std::size_t k = 0; k < t.history.steps(); ++k) {
        const FrontState& s = t.history.at_step(k);
        const auto cf = constant_state::closed_form_P(par, G, P0, t.spec.k_hat0, s.t);
        times.push_back(s.t);
        k_hats.push_back(cf.k_hat);
        out << csv::num(s.t) << ',' << csv::num(s.markers[mid].P) << ',' << csv::num(cf.P)
            << ',' << csv::num(cf.k_hat) << ',' << csv::num(kap) << '\n';
    }
    write_file(opts, "constant_state.csv", out.str());

    const auto flags = constant_state::stability_window(times, k_hats);
    bool all_ok = true;
    for (const auto& fl : flags) all_ok = all_ok && fl.ok;
    std::cout << "kappa = " << csv::num(kap) << "\n";
    std::cout << "k_hat(t_max) = " << csv::num(k_hats.back()) << "\n";
    std::cout << "stability window 0 < int k_hat < t: " << (all_ok ? "holds" : "VIOLATED")
              << " at all steps\n";
    return 0;
}

int cmd_dispersion(const CommonOpts& opts) {
    const config::Config cfg = load_config(opts);
    const double K = cfg.get_number("dispersion.K", 1.0);
    const double t_scale = cfg.get_number("dispersion.t_growth", 10.0);
    std::ostringstream out;
    out << "# schema=1\n";
    out << "xi,predicted,measured,integrator,grid_points\n";
    for (double xi : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        const double pred = std::sqrt(std::fabs(K) * xi / 2.0);
        const auto m = dispersion::measure_growth(K, xi, t_scale / pred,
                                                  dispersion::Integrator::ExactMode);
        out << csv::num(xi) << ',' << csv::num(m.predicted) << ',' << csv::num(m.rate)
            << ",exact_mode,0\n";
    }
    const int N0 = cfg.get_int("dispersion.grid_points", 64);
    for (int N : {N0, 2 * N0}) {
        const double xi = N / 4.0;
        const double pred = std::sqrt(std::fabs(K) * xi / 2.0);
        const auto m = dispersion::measure_growth(K, xi, 2.0 / pred,
                                                  dispersion::Integrator::FiniteDifference, N);
        out << csv::num(xi) << ',' << csv::num(m.predicted) << ',' << csv::num(m.rate)
            << ",finite_difference," << N << '\n';
    }
    write_file(opts, "dispersion.csv", out.str());
    std::cout << "growth rates written (rate ~ sqrt(|K| xi / 2), unbounded in xi)\n";
    return 0;
}

int cmd_oracle(const CommonOpts& opts) {
    const config::Config cfg = load_config(opts);
    Tracked t = run_tracker(cfg);
    const FrontState& last = t.history.states.back();
    const double dl = last.dl();
    const double span_x = cfg.get_number("oracle.box_half_width", 1.2);
    const oracle::Box seed{-span_x, span_x, -span_x, span_x};
    const oracle::StickyResult sr =
        oracle::sticky_run(t.spec.data, t.history, t.spec.h, 5.0 * t.spec.dt, t.spec.t_max,
                           seed);
    std::ostringstream out;
    out << "# schema=1\n";
    out << "l,bin_mass,bin_mom_u,bin_mom_v,tracked_P_dl,tracked_I_dl,tracked_J_dl\n";
    for (std::size_t i = 0; i < sr.bins.size(); ++i) {
        const FrontMarker& m = last.markers[i];
        out << csv::num(sr.bins[i].l) << ',' << csv::num(sr.bins[i].mass) << ','
            << csv::num(sr.bins[i].mom_u) << ',' << csv::num(sr.bins[i].mom_v) << ','
            << csv::num(m.P * dl) << ',' << csv::num(m.I * dl) << ',' << csv::num(m.J * dl)
            << '\n';
    }
    write_file(opts, "oracle_bins.csv", out.str());
    const double defect = sr.absorbed_mass() + sr.free_mass - sr.initial_mass;
    std::cout << "particle bookkeeping defect = " << csv::num(defect) << "\n";
    return 0;
}

int cmd_validate(const CommonOpts& opts) {
    const auto results = acceptance::run_all();
    std::cout << acceptance::render_report(results);
    write_file(opts, "validate.csv", acceptance::render_csv(results));
    write_file(opts, "validate_summary.json", acceptance::render_json(results));
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

void emit_error(const char* kind, const std::string& message) {
    std::string quoted;
    for (char c : message) {
        if (c == '"' || c == '\\') quoted += '\\';
        if (c == '\n') {
            quoted += "\\n";
            continue;
        }
        quoted += c;
    }
    std::cerr << "{\"error\":\"" << kind << "\",\"message\":\"" << quoted << "\"}\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shock-front laboratory for 2-D pressureless gas dynamics"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* simulate = app.add_subcommand("simulate", "track the shock front");
    add_common(simulate, opts);
    auto* variational_cmd =
        app.add_subcommand("variational", "singular surface of the variational solution");
    add_common(variational_cmd, opts);
    auto* compare =
        app.add_subcommand("compare-surfaces", "variational vs tracked-shock comparison");
    add_common(compare, opts);
    auto* cstate = app.add_subcommand("constant-state", "closed forms for constant states");
    add_common(cstate, opts);
    auto* disp = app.add_subcommand("dispersion", "model-equation growth rates");
    add_common(disp, opts);
    auto* orac = app.add_subcommand("oracle", "sticky-particle cross check");
    add_common(orac, opts);
    auto* validate = app.add_subcommand("validate", "run the acceptance suite");
    add_common(validate, opts, /*config_required=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(opts);
        if (variational_cmd->parsed()) return cmd_variational(opts);
        if (compare->parsed()) return cmd_compare_surfaces(opts);
        if (cstate->parsed()) return cmd_constant_state(opts);
        if (disp->parsed()) return cmd_dispersion(opts);
        if (orac->parsed()) return cmd_oracle(opts);
        if (validate->parsed()) return cmd_validate(opts);
    } catch (const ConfigError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const ParseError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return 3;
    }
    return 0;
}
