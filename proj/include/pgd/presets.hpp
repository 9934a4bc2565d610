#pragma once

#include <optional>
#include <string>

#include "pgd/front_tracker.hpp"
#include "pgd/scenario.hpp"

namespace pgd::presets {

/// Symmetric 1-D Riemann data on a straight front b = 0: equal densities,
/// vertical velocities +-w colliding head-on. Minus side is the upper
/// half-plane (level set G = -b), which matches the admissibility sign
/// convention for the parametrization A = l.
InitialData symmetric_riemann(double rho, double w, double l_min = -1.0, double l_max = 1.0);

/// Constant external state: minus side (upper half-plane) moves with (u, v),
/// v < 0; plus side is at rest. Admissibility is checked in the frame moving
/// with half the minus-side velocity.
InitialData constant_state(double rho_minus, double rho_plus, double u, double v,
                           double l_min = -1.0, double l_max = 1.0);

/// Front load for the constant-state scenario: P0 and the velocity fraction
/// k_hat0, giving I0 = k_hat0 P0 u, J0 = k_hat0 P0 v.
InitialFrontLoad constant_state_load(double P0, double k_hat0, double u, double v);

/// Perturbed potential data: upper side at rest (potential 0), lower side
/// with potential b + eps*f below the curve b + eps*f = 0. Restricted to f
/// depending on a only, so the curve is b = -eps*f(a) in closed form.
/// Unit density on both sides.
InitialData potential_perturbation(const std::string& f_of_a, double eps, double l_min = -1.0,
                                   double l_max = 1.0);

/// Same velocity, same density on both sides; the front carries nothing.
InitialData no_jump(const std::string& rho, const std::string& u, const std::string& v,
                    double l_min = -1.0, double l_max = 1.0);

}  // namespace pgd::presets
