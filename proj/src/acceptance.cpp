#include "pgd/acceptance.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "pgd/constant_state.hpp"
#include "pgd/csv.hpp"
#include "pgd/dispersion.hpp"
#include "pgd/front_tracker.hpp"
#include "pgd/oracle.hpp"
#include "pgd/presets.hpp"
#include "pgd/variational.hpp"

namespace pgd::acceptance {

namespace {

std::string fmt(double v) { return csv::num(v); }

struct Tracked {
    InitialData data;
    std::optional<InitialFrontLoad> load;
    FrontHistory history;
};

Tracked track(InitialData d, std::optional<InitialFrontLoad> load, int n_markers, double dt,
              double t_max) {
    Tracked r{std::move(d), std::move(load), {}};
    FrontTracker tr(r.data);
    r.history = tr.run(tr.initialize(n_markers, r.load), dt, t_max);
    return r;
}

template <typename F>
CriterionResult guarded(int id, const std::string& name, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        if (!r.detail.empty()) r.detail += "; ";
        r.detail += std::string("exception: ") + e.what();
    }
    return r;
}

// --- criterion 1: constant-state closed form -------------------------------

CriterionResult criterion1() {
    return guarded(1, "constant-state closed form P(t)", [](CriterionResult& r) {
        const double rho = 1.0, rho_tilde = 4.0, u = 0.0, v = -1.0;
        const double P0 = 1.0, k_hat0 = 0.5, G = 1.0;
        Tracked run = track(presets::constant_state(rho, rho_tilde, u, v),
                            presets::constant_state_load(P0, k_hat0, u, v), 17, 1e-3, 2.0);
        const constant_state::Params par{rho, rho_tilde, u, v};
        const std::size_t mid = run.history.at_step(0).size() / 2;
        bool ok = true;
        double worst = 0.0;
        for (double t : {0.5, 1.0, 2.0}) {
            const double P_num = run.history.interpolate(t).markers[mid].P;
            const double P_ref = constant_state::closed_form_P(par, G, P0, k_hat0, t).P;
            const double rel = std::fabs(P_num - P_ref) / P_ref;
            worst = std::max(worst, rel);
            ok = ok && rel < 1e-6;
            r.detail += "t=" + fmt(t) + ": P=" + fmt(P_num) + " ref=" + fmt(P_ref) +
                        " rel=" + fmt(rel) + "; ";
        }
        const double P1 = run.history.interpolate(1.0).markers[mid].P;
        ok = ok && std::fabs(P1 - std::sqrt(10.0)) / std::sqrt(10.0) < 1e-6;
        r.detail += "P(1)=" + fmt(P1) + " vs sqrt(10)=" + fmt(std::sqrt(10.0));
        r.value = worst;
        r.expected = 0.0;
        r.tol = 1e-6;
        r.pass = ok;
    });
}

// --- criterion 2: kappa asymptote ------------------------------------------

CriterionResult criterion2() {
    return guarded(2, "asymptotic front fraction kappa", [](CriterionResult& r) {
        const double rho = 1.0, rho_tilde = 4.0, u = 0.0, v = -1.0;
        const double P0 = 1.0, k_hat0 = 0.5;
        Tracked run = track(presets::constant_state(rho, rho_tilde, u, v),
                            presets::constant_state_load(P0, k_hat0, u, v), 9, 1e-2, 50.0);
        const double kappa = constant_state::kappa(rho, rho_tilde);
        const FrontState& last = run.history.states.back();
        const std::size_t mid = last.size() / 2;
        const FrontMarker& m = last.markers[mid];
        const double k_hat_num = (m.J / m.P) / v;
        const double k_err = std::fabs(k_hat_num - kappa) / kappa;

        const FrontMarker& m0 = run.history.at_step(0).markers[mid];
        const Vec2 asympt{m0.x + kappa * u * 50.0, m0.y + kappa * v * 50.0};
        const double drift = (Vec2{m.x, m.y} - asympt).norm();
        const double scale = 50.0 * kappa * std::hypot(u, v);
        const double p_err = drift / scale;

        r.value = k_hat_num;
        r.expected = kappa;
        r.tol = 0.01;
        r.pass = k_err < 0.01 && p_err < 0.01;
        r.detail = "k_hat(50)=" + fmt(k_hat_num) + " kappa=" + fmt(kappa) +
                   " rel=" + fmt(k_err) + "; position deviation " + fmt(drift) + " (" +
                   fmt(p_err) + " of asymptote displacement)";
    });
}

// --- criterion 3: symmetric Riemann + sticky oracle ------------------------

CriterionResult criterion3() {
    return guarded(3, "symmetric Riemann front and sticky oracle", [](CriterionResult& r) {
        const double rho = 1.0, w = 1.0, t_end = 1.0;
        Tracked run = track(presets::symmetric_riemann(rho, w), std::nullopt, 33, 1e-3, t_end);
        FrontTracker tr(run.data);

        const FrontState& last = run.history.states.back();
        double vmax = 0.0, p_err = 0.0;
        for (std::size_t i = 0; i < last.size(); ++i) {
            vmax = std::max(vmax, tr.front_velocity(last, i).norm());
            p_err = std::max(p_err, std::fabs(last.markers[i].P - 2.0 * rho * w * t_end) /
                                        (2.0 * rho * w * t_end));
        }

        const double dl = last.dl();
        const double h = dl / 4.0;
        const oracle::StickyResult sr = oracle::sticky_run(
            run.data, run.history, h, 5e-3, t_end, {-1.0, 1.0, -1.1, 1.1});
        double bin_err = 0.0;
        int n_checked = 0;
        for (const auto& bin : sr.bins) {
            if (std::fabs(bin.l) > 0.5) continue;
            const double got = bin.mass / dl;
            bin_err = std::max(bin_err, std::fabs(got - 2.0 * rho * w * t_end) /
                                            (2.0 * rho * w * t_end));
            ++n_checked;
        }
        const double conservation =
            std::fabs(sr.absorbed_mass() + sr.free_mass - sr.initial_mass);

        r.value = bin_err;
        r.expected = 0.0;
        r.tol = 0.02;
        r.pass = vmax < 1e-10 && p_err < 1e-8 && bin_err < 0.02 && n_checked > 0 &&
                 conservation < 1e-9;
        r.detail = "max |front velocity|=" + fmt(vmax) + "; P rel err=" + fmt(p_err) +
                   "; oracle bin rel err=" + fmt(bin_err) + " over " +
                   std::to_string(n_checked) + " bins; mass bookkeeping defect=" +
                   fmt(conservation);
    });
}

// --- criterion 4: variational vs shock surface gap -------------------------

double measured_surface_gap(const std::string& f_text, double eps, double t_end) {
    Tracked run = track(presets::potential_perturbation(f_text, eps, -0.5, 0.5), std::nullopt,
                        65, 1e-3, t_end);
    const FrontState& last = run.history.states.back();
    const FrontMarker& m = last.markers[last.size() / 2];

    const variational::Potential pot =
        variational::Potential::perturbation(FieldExpr::parse(f_text), eps);
    const variational::SearchBox box{-1.0, 1.0, -1.0, 1.0};
    const double y_v =
        variational::singular_point(pot, t_end, m.x, 0.2, 0.3, box, 1e-10, 129);
    return y_v - m.y;
}

CriterionResult criterion4() {
    return guarded(4, "variational surface differs from the shock surface",
                   [](CriterionResult& r) {
                       const double eps = 1e-3, t_end = 0.5;
                       const double expected = eps * t_end * t_end / 12.0;
                       const double gap = measured_surface_gap("a^2", eps, t_end);
                       const double gap_ctrl = measured_surface_gap("a", eps, t_end);
                       r.value = gap;
                       r.expected = expected;
                       r.tol = 0.1 * expected;
                       r.pass = std::fabs(gap - expected) < 0.1 * expected &&
                                std::fabs(gap_ctrl) < 1e-8;
                       r.detail = "f=a^2 gap=" + fmt(gap) + " expected=" + fmt(expected) +
                                  "; control f=a gap=" + fmt(gap_ctrl) + " (tol 1e-8)";
                   });
}

// --- criterion 5: surface-coincidence defect -------------------------------

double mid_defect(const Tracked& run, const variational::Potential& pot) {
    const auto d = variational::surface_coincidence_defects(run.history, pot);
    return d[d.size() / 2];
}

CriterionResult criterion5() {
    return guarded(5, "surface-coincidence relation defect", [](CriterionResult& r) {
        const double eps = 1e-3, t_end = 0.5;
        const variational::Potential pot =
            variational::Potential::perturbation(FieldExpr::parse("a^2"), eps);
        Tracked fine = track(presets::potential_perturbation("a^2", eps, -0.5, 0.5),
                             std::nullopt, 65, 1e-3, t_end);
        Tracked coarse = track(presets::potential_perturbation("a^2", eps, -0.5, 0.5),
                               std::nullopt, 33, 2e-3, t_end);
        const double d_fine = mid_defect(fine, pot);
        const double d_coarse = mid_defect(coarse, pot);
        const double est = std::fabs(d_fine - d_coarse);

        const variational::Potential pot_sr = variational::Potential::piecewise(
            FieldExpr::parse("b"), FieldExpr::parse("0 - b"), FieldExpr::parse("b"));
        Tracked sr_fine =
            track(presets::symmetric_riemann(1.0, 1.0), std::nullopt, 33, 5e-3, t_end);
        Tracked sr_coarse =
            track(presets::symmetric_riemann(1.0, 1.0), std::nullopt, 17, 1e-2, t_end);
        const double d_sr = mid_defect(sr_fine, pot_sr);
        const double est_sr = std::fabs(d_sr - mid_defect(sr_coarse, pot_sr)) + 1e-12;

        r.value = d_fine;
        r.expected = 0.0;
        r.tol = 5.0 * est;
        r.pass = std::fabs(d_fine) > 5.0 * est && std::fabs(d_sr) < est_sr;
        r.detail = "perturbed defect=" + fmt(d_fine) + " discretization estimate=" + fmt(est) +
                   "; symmetric Riemann defect=" + fmt(d_sr) + " (estimate " + fmt(est_sr) +
                   ")";
    });
}

// --- criterion 6: adhesion identity residual -------------------------------

double max_interior_residual(const Tracked& run) {
    FrontTracker tr(run.data);
    const auto res = tr.adhesion_residual(run.history);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < res.size(); ++i) worst = std::max(worst, res[i].norm());
    return worst;
}

CriterionResult criterion6() {
    return guarded(6, "adhesion identity residual", [](CriterionResult& r) {
        Tracked cs = track(presets::constant_state(1.0, 4.0, 0.0, -1.0), std::nullopt, 33,
                           1e-3, 1.0);
        const double res_cs = max_interior_residual(cs);

        // On the constant state every integrand is linear in time, so the
        // quadrature is exact and the residual sits at round-off; convergence
        // under refinement is measured on a curved scenario instead.
        Tracked fine = track(presets::potential_perturbation("a^2", 0.05, -0.5, 0.5),
                             std::nullopt, 65, 1e-3, 1.0);
        Tracked coarse = track(presets::potential_perturbation("a^2", 0.05, -0.5, 0.5),
                               std::nullopt, 33, 2e-3, 1.0);
        const double res_fine = max_interior_residual(fine);
        const double res_coarse = max_interior_residual(coarse);
        const double ratio = res_coarse / std::max(res_fine, 1e-300);
        r.value = res_cs;
        r.expected = 0.0;
        r.tol = 1e-4;
        r.pass = res_cs < 1e-4 && res_fine < 1e-4 && ratio >= 3.0;
        r.detail = "constant-state residual=" + fmt(res_cs) + " (tol 1e-4); curved-scenario " +
                   "residual fine=" + fmt(res_fine) + " coarse=" + fmt(res_coarse) +
                   "; refinement ratio=" + fmt(ratio) + " (need >= 3)";
    });
}

// --- criterion 7: weak conservation identities -----------------------------

CriterionResult criterion7() {
    return guarded(7, "weak-form conservation defects", [](CriterionResult& r) {
        Tracked run = track(presets::symmetric_riemann(1.0, 1.0, -1.5, 1.5), std::nullopt, 49,
                            5e-3, 0.8);
        const FieldExpr bump = FieldExpr::parse("exp(-16*(x^2+y^2))", {"x", "y"});
        const oracle::Box box{-2.0, 2.0, -2.0, 2.0};

        // The dominant quadrature error is the first-order staircase from the
        // sharp absorbed/free boundary of the node grid; for any single time
        // window it aliases against the grid, so the defect is aggregated as
        // an RMS over a fan of windows before comparing resolutions.
        const int n_windows = 8;
        double ssq_fine = 0.0, ssq_coarse = 0.0, ssq_mu = 0.0, ssq_mv = 0.0;
        for (int k = 0; k < n_windows; ++k) {
            const double t1 = 0.12 + 0.05 * k, t2 = t1 + 0.3;
            const oracle::WeakResidual fine = oracle::weak_residual(
                run.data, run.history, bump, bump, bump, t1, t2, box, 64, 64);
            const oracle::WeakResidual coarse = oracle::weak_residual(
                run.data, run.history, bump, bump, bump, t1, t2, box, 32, 32);
            ssq_fine += fine.mass * fine.mass;
            ssq_coarse += coarse.mass * coarse.mass;
            ssq_mu += fine.mom_u * fine.mom_u;
            ssq_mv += fine.mom_v * fine.mom_v;
        }
        const double rms_fine = std::sqrt(ssq_fine / n_windows);
        const double rms_coarse = std::sqrt(ssq_coarse / n_windows);
        const double rms_mu = std::sqrt(ssq_mu / n_windows);
        const double rms_mv = std::sqrt(ssq_mv / n_windows);

        // mass inside the box: smooth density 1 over the area plus front load
        double box_mass = (box.x1 - box.x0) * (box.y1 - box.y0);
        const FrontState late_state = run.history.interpolate(0.77);
        for (const auto& m : late_state.markers) box_mass += m.P * late_state.dl();

        const double worst = std::max({rms_fine, rms_mu, rms_mv});
        const double ratio = rms_coarse / std::max(rms_fine, 1e-300);
        r.value = worst / box_mass;
        r.expected = 0.0;
        r.tol = 1e-3;
        r.pass = worst < 1e-3 * box_mass && ratio > 1.4 && ratio < 2.6;
        r.detail = "rms defects (mass,mom_u,mom_v)=(" + fmt(rms_fine) + "," + fmt(rms_mu) +
                   "," + fmt(rms_mv) + ") over " + std::to_string(n_windows) +
                   " windows, box mass=" + fmt(box_mass) + "; refinement ratio=" + fmt(ratio) +
                   " (need 2 +- 30%)";
    });
}

// --- criterion 8: first integrals ------------------------------------------

CriterionResult criterion8() {
    return guarded(8, "first-integral drift", [](CriterionResult& r) {
        const double rho = 1.0, rho_tilde = 4.0, u = 0.6, v = -0.8;
        Tracked run = track(presets::constant_state(rho, rho_tilde, u, v),
                            presets::constant_state_load(1.0, 0.5, u, v), 17, 1e-3, 2.0);
        const constant_state::Params par{rho, rho_tilde, u, v};
        const std::size_t mid = run.history.at_step(0).size() / 2;
        const auto ref = constant_state::first_integrals_at(par, run.history.at_step(0), mid);
        double drift = 0.0;
        for (std::size_t k = 0; k < run.history.steps(); k += 50) {
            const auto fi =
                constant_state::first_integrals_at(par, run.history.at_step(k), mid);
            drift = std::max({drift, std::fabs(fi.C - ref.C), std::fabs(fi.G - ref.G)});
        }
        r.value = drift;
        r.expected = 0.0;
        r.tol = 1e-8;
        r.pass = drift < 1e-8;
        r.detail = "max |uJ-vI - C0|, |u y_l - v x_l - G0| drift over t in [0,2]: " +
                   fmt(drift) + " (C0=" + fmt(ref.C) + ", G0=" + fmt(ref.G) + ")";
    });
}

// --- criterion 9: dispersion scaling ---------------------------------------

CriterionResult criterion9() {
    return guarded(9, "dispersion growth-rate scaling", [](CriterionResult& r) {
        const double K = 1.0;
        double rates[3] = {0, 0, 0};
        bool ok = true;
        int idx = 0;
        for (double xi : {4.0, 16.0, 64.0}) {
            const double pred = std::sqrt(std::fabs(K) * xi / 2.0);
            const auto m = dispersion::measure_growth(K, xi, 10.0 / pred,
                                                      dispersion::Integrator::ExactMode);
            rates[idx++] = m.rate;
            const double rel = std::fabs(m.rate - pred) / pred;
            ok = ok && rel < 0.02;
            r.detail += "xi=" + fmt(xi) + ": rate=" + fmt(m.rate) + " pred=" + fmt(pred) +
                        " rel=" + fmt(rel) + "; ";
        }
        const double ratio1 = rates[1] / rates[0];
        const double ratio2 = rates[2] / rates[1];
        ok = ok && std::fabs(ratio1 - 2.0) < 0.05 && std::fabs(ratio2 - 2.0) < 0.05;
        r.value = ratio1;
        r.expected = 2.0;
        r.tol = 0.05;
        r.pass = ok;
        r.detail += "rate(4xi)/rate(xi)=" + fmt(ratio1) + ", " + fmt(ratio2);
    });
}

// --- criterion 10: derivative property suite -------------------------------

std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
    std::uniform_real_distribution<double> cst(-2.0, 2.0);
    switch (pick(rng)) {
        case 0: return "a";
        case 1: return "b";
        case 2:
        case 3: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", cst(rng));
            return buf;
        }
        case 4: return "(" + random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1) + ")";
        case 5: return "(" + random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1) + ")";
        case 6: return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
        case 7: return "sin(" + random_expr(rng, depth - 1) + ")";
        case 8: return "cos(" + random_expr(rng, depth - 1) + ")";
        default: return "(" + random_expr(rng, depth - 1) + "/(3+a^2+b^2))";
    }
}

CriterionResult criterion10() {
    return guarded(10, "symbolic-vs-numeric derivative property suite",
                   [](CriterionResult& r) {
                       std::mt19937 rng(424242);
                       std::uniform_real_distribution<double> pt(-1.5, 1.5);
                       int checked = 0, failed = 0;
                       double worst = 0.0;
                       while (checked < 1000) {
                           const auto src = random_expr(rng, 3);
                           const auto e = FieldExpr::parse(src);
                           const auto da = e.derivative("a");
                           const auto db = e.derivative("b");
                           const double a = pt(rng), b = pt(rng);
                           const double h = 1e-6;
                           try {
                               const double fda = (e.eval(a + h, b) - e.eval(a - h, b)) / (2 * h);
                               const double fdb = (e.eval(a, b + h) - e.eval(a, b - h)) / (2 * h);
                               const double sa = da.eval(a, b), sb = db.eval(a, b);
                               const double ea =
                                   std::fabs(sa - fda) / std::max(1.0, std::fabs(sa));
                               const double eb =
                                   std::fabs(sb - fdb) / std::max(1.0, std::fabs(sb));
                               worst = std::max({worst, ea, eb});
                               if (ea >= 1e-5 || eb >= 1e-5) ++failed;
                               ++checked;
                           } catch (const DomainError&) {
                               // singular sample; draw another expression
                           }
                       }
                       r.value = worst;
                       r.expected = 0.0;
                       r.tol = 1e-5;
                       r.pass = failed == 0;
                       r.detail = std::to_string(checked) + " expressions, " +
                                  std::to_string(failed) + " failures, worst rel err " +
                                  fmt(worst);
                   });
}

// --- criterion 11: determinism ---------------------------------------------

CriterionResult criterion11() {
    return guarded(11, "byte-identical repeated runs", [](CriterionResult& r) {
        auto render_once = [] {
            Tracked run =
                track(presets::symmetric_riemann(1.0, 1.0), std::nullopt, 17, 1e-2, 0.2);
            FrontTracker tr(run.data);
            return csv::history_csv(tr, run.history);
        };
        const std::string first = render_once();
        const std::string second = render_once();
        r.value = first == second ? 1.0 : 0.0;
        r.expected = 1.0;
        r.tol = 0.0;
        r.pass = first == second && !first.empty();
        r.detail = "two independent runs rendered " + std::to_string(first.size()) +
                   " CSV bytes, " + (r.pass ? "identical" : "DIFFERENT");
    });
}

}  // namespace

std::vector<CriterionResult> run_all() {
    return {criterion1(), criterion2(), criterion3(), criterion4(),  criterion5(),
            criterion6(), criterion7(), criterion8(), criterion9(),  criterion10(),
            criterion11()};
}

std::string render_report(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& r : results)
        out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " -- "
            << r.detail << "\n";
    return out.str();
}

std::string render_csv(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    out << "# schema=1\n";
    out << "id,name,value,expected,tol,pass\n";
    for (const auto& r : results)
        out << r.id << ',' << r.name << ',' << fmt(r.value) << ',' << fmt(r.expected) << ','
            << fmt(r.tol) << ',' << (r.pass ? 1 : 0) << '\n';
    return out.str();
}

std::string render_json(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& r : results) {
        if (!first) out << ",";
        first = false;
        out << "\"criterion_" << r.id << "\":{\"name\":\"" << r.name << "\",\"value\":"
            << fmt(r.value) << ",\"expected\":" << fmt(r.expected) << ",\"tol\":" << fmt(r.tol)
            << ",\"pass\":" << (r.pass ? "true" : "false") << "}";
    }
    out << "}";
    return out.str();
}

}  // namespace pgd::acceptance
