#include "pgd/constant_state.hpp"

#include <cmath>

#include "pgd/front_tracker.hpp"

namespace pgd::constant_state {

double kappa(double rho, double rho_tilde) {
    double sr = std::sqrt(rho), st = std::sqrt(rho_tilde);
    return sr / (sr + st);
}

ClosedFormPoint closed_form_P(const Params& p, double G, double P0, double k_hat0, double t) {
    if (!(k_hat0 > 0.0 && k_hat0 < 1.0))
        throw StabilityViolated("k_hat0 = " + std::to_string(k_hat0) + " outside (0,1)");
    const double rho = p.rho, rht = p.rho_tilde;
    const double N = k_hat0 * (rho - rht) - rho;
    const double P2 = P0 * P0 - 2.0 * G * P0 * N * t + rho * rht * G * G * t * t;
    ClosedFormPoint out;
    out.P = std::sqrt(P2);
    out.P_dot = (-G * P0 * N + rho * rht * G * G * t) / out.P;
    if (rho != rht) {
        out.k_hat = (rho - out.P_dot / G) / (rho - rht);
    } else {
        // Equal densities: P is linear in t and the generic expression for
        // k_hat degenerates. Integrating (P k_hat)' = -rho G (k_hat - 1)
        // with P = P0 + rho G t gives a closed form.
        const double c = rho * G;
        out.k_hat = (k_hat0 * P0 * P0 + c * P0 * t + 0.5 * c * c * t * t) / P2;
    }
    return out;
}

FirstIntegrals first_integrals_at(const Params& p, const FrontState& state, std::size_t i) {
    const auto& m = state.markers;
    const std::size_t n = m.size();
    const double dl = state.dl();
    double xl, yl;
    if (state.topology == Topology::Periodic) {
        xl = (m[(i + 1) % n].x - m[(i + n - 1) % n].x) / (2.0 * dl);
        yl = (m[(i + 1) % n].y - m[(i + n - 1) % n].y) / (2.0 * dl);
    } else if (i == 0) {
        xl = (-3.0 * m[0].x + 4.0 * m[1].x - m[2].x) / (2.0 * dl);
        yl = (-3.0 * m[0].y + 4.0 * m[1].y - m[2].y) / (2.0 * dl);
    } else if (i == n - 1) {
        xl = (3.0 * m[n - 1].x - 4.0 * m[n - 2].x + m[n - 3].x) / (2.0 * dl);
        yl = (3.0 * m[n - 1].y - 4.0 * m[n - 2].y + m[n - 3].y) / (2.0 * dl);
    } else {
        xl = (m[i + 1].x - m[i - 1].x) / (2.0 * dl);
        yl = (m[i + 1].y - m[i - 1].y) / (2.0 * dl);
    }
    return {p.u * m[i].J - p.v * m[i].I, p.u * yl - p.v * xl};
}

std::vector<FirstIntegrals> first_integrals(const Params& p, const FrontState& state,
                                            const FrontHistory&) {
    std::vector<FirstIntegrals> out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) out[i] = first_integrals_at(p, state, i);
    return out;
}

std::vector<StabilityFlag> stability_window(const std::vector<double>& times,
                                            const std::vector<double>& k_hat) {
    std::vector<StabilityFlag> out;
    out.reserve(times.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0) acc += 0.5 * (times[k] - times[k - 1]) * (k_hat[k] + k_hat[k - 1]);
        bool ok = k == 0 || (acc > 0.0 && acc < times[k] - times[0]);
        out.push_back({times[k], acc, ok});
    }
    return out;
}

std::vector<double> p_equation_rhs(const std::vector<double>& P, const std::vector<double>& C,
                                   double rho, double dl) {
    const std::size_t n = P.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(P[i] > 0.0)) throw ZeroMass("P <= 0 in P-equation");
        double qp = C[(i + 1) % n] / P[(i + 1) % n];
        double qm = C[(i + n - 1) % n] / P[(i + n - 1) % n];
        out[i] = rho * (qp - qm) / (2.0 * dl);
    }
    return out;
}

PEquationRun evolve_p_equation(std::vector<double> P0, std::vector<double> Pdot0,
                               const std::vector<double>& C, double rho, double dl, double dt,
                               double t_max, bool unsafe_long_horizon, double t_max_safe) {
    if (t_max > t_max_safe && !unsafe_long_horizon)
        throw StabilityViolated(
            "P-equation horizon exceeds the safe window; the Cauchy problem is ill-posed and "
            "high-frequency error grows without bound (pass unsafe_long_horizon to override)");
    PEquationRun run;
    const int n_steps = static_cast<int>(std::llround(t_max / dt));
    std::vector<double> prev = P0, cur(P0.size());
    // Taylor start: P(dt) = P0 + dt Pdot0 + dt^2/2 P_tt(0)
    auto acc0 = p_equation_rhs(P0, C, rho, dl);
    for (std::size_t i = 0; i < P0.size(); ++i)
        cur[i] = P0[i] + dt * Pdot0[i] + 0.5 * dt * dt * acc0[i];
    run.t.push_back(0.0);
    run.P.push_back(prev);
    run.t.push_back(dt);
    run.P.push_back(cur);
    for (int k = 2; k <= n_steps; ++k) {
        auto acc = p_equation_rhs(cur, C, rho, dl);
        std::vector<double> next(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i)
            next[i] = 2.0 * cur[i] - prev[i] + dt * dt * acc[i];
        prev.swap(cur);
        cur.swap(next);
        run.t.push_back(k * dt);
        run.P.push_back(cur);
    }
    return run;
}

}  // namespace pgd::constant_state
