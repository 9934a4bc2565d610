#pragma once

#include <vector>

#include "pgd/front_state.hpp"

namespace pgd {

struct StabilityViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace constant_state {

/// Parameters of the constant-external-state regime: minus side density rho
/// and velocity (u, v); plus side density rho_tilde at rest.
struct Params {
    double rho;        // minus side
    double rho_tilde;  // plus side
    double u, v;       // minus side velocity
};

/// G(l) = u y0' - v x0' for a straight front x0 = l, y0 = 0 is simply -v.
inline double front_G(const Params& p, double x0l, double y0l) {
    return p.u * y0l - p.v * x0l;
}

/// Asymptotic front velocity fraction sqrt(rho)/(sqrt(rho)+sqrt(rho_tilde)).
double kappa(double rho, double rho_tilde);

struct ClosedFormPoint {
    double P;
    double P_dot;
    double k_hat;
};

/// Closed-form front mass and velocity fraction in the zero-first-integral
/// family. Requires 0 < k_hat0 < 1; handles the equal-density degenerate
/// branch where the generic k_hat expression divides by rho - rho_tilde.
ClosedFormPoint closed_form_P(const Params& p, double G, double P0, double k_hat0, double t);

struct FirstIntegrals {
    double C;  // u J - v I
    double G;  // u y_l - v x_l
};

/// First integrals per marker at one state of a tracked run.
std::vector<FirstIntegrals> first_integrals(const Params& p, const FrontState& state,
                                            const FrontHistory& history_for_tangent);

/// Evaluates u J - v I and u y_l - v x_l for marker i using tangents from
/// centered differences within the given state.
FirstIntegrals first_integrals_at(const Params& p, const FrontState& state, std::size_t i);

struct StabilityFlag {
    double t;
    double k_hat_integral;
    bool ok;  // 0 < integral < t
};

/// Trapezoid accumulation of the k_hat history with the stability window
/// check 0 < int k_hat < t at every step.
std::vector<StabilityFlag> stability_window(const std::vector<double>& times,
                                            const std::vector<double>& k_hat);

/// Right-hand side of the second-order front-mass equation in the
/// equal-density regime: P_tt = rho * d/dl (C/P). Periodic in l.
std::vector<double> p_equation_rhs(const std::vector<double>& P, const std::vector<double>& C,
                                   double rho, double dl);

struct PEquationRun {
    std::vector<double> t;
    std::vector<std::vector<double>> P;  // per time, per l-sample
};

/// Leapfrog evolution of the P_tt = rho (C/P)_l equation. Horizons beyond
/// t_max_safe require unsafe_long_horizon (the problem is ill-posed and the
/// discrete solution blows up at grid scale).
PEquationRun evolve_p_equation(std::vector<double> P0, std::vector<double> Pdot0,
                               const std::vector<double>& C, double rho, double dl, double dt,
                               double t_max, bool unsafe_long_horizon = false,
                               double t_max_safe = 0.1);

}  // namespace constant_state
}  // namespace pgd
