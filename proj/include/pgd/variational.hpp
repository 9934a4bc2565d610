#pragma once

#include <optional>
#include <vector>

#include "pgd/fieldexpr.hpp"
#include "pgd/front_tracker.hpp"

namespace pgd {

struct BoxTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoJumpDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace variational {

/// Velocity potential of the initial data: a single smooth expression
/// S0(a,b), or a two-branch piecewise form switched by the sign of an
/// indicator expression (upper branch where indicator > 0). The perturbation
/// form specializes the latter to
///   S0 = 0           where b > -eps f(a,b)
///   S0 = b + eps f   where b < -eps f(a,b).
class Potential {
public:
    static Potential smooth(FieldExpr S0);
    static Potential piecewise(FieldExpr indicator, FieldExpr upper, FieldExpr lower);
    static Potential perturbation(FieldExpr f, double eps);

    double value(double a, double b) const;
    Vec2 gradient(double a, double b) const;  // initial velocity (u0, v0)

    bool is_piecewise() const { return piecewise_; }
    double eps() const { return eps_; }

    /// For piecewise potentials: b-coordinate of the branch curve
    /// indicator(a,b) = 0 at abscissa a, by 1-D Newton.
    double curve_b(double a) const;

private:
    bool piecewise_ = false;
    FieldExpr indicator_, indicator_b_;
    FieldExpr up_, up_a_, up_b_;
    FieldExpr lo_, lo_a_, lo_b_;
    double eps_ = 0.0;
};

struct SearchBox {
    double a_min, a_max, b_min, b_max;
};

struct MinimizerSet {
    double psi;                    // minimum value of the quadratic-cost functional
    std::vector<Vec2> minimizers;  // all global minimizers within value tolerance
};

/// Global minimization of S0(a,b) + ((x-a)^2 + (y-b)^2) / (2t): deterministic
/// coarse grid scan followed by Nelder--Mead polish from every near-minimal
/// cell, with deduplication of converged points. delta_val bounds "same
/// minimum value", cluster_radius merges coincident minimizers. Throws
/// BoxTooSmall when the best minimizer sits on the search box boundary.
MinimizerSet hopf_lax(const Potential& pot, double t, double x, double y, const SearchBox& box,
                      int grid_n = 257, double delta_cluster = 1e-2, double delta_val = 1e-9,
                      double cluster_radius = 1e-7);

/// Location of the minimizer-branch jump on the vertical segment
/// {x} x [y_lo, y_hi]: bisection on which endpoint's minimizer the midpoint's
/// minimizer is closer to. Requires the endpoints to lie on different
/// branches (NoJumpDetected otherwise). Returns the jump ordinate.
double singular_point(const Potential& pot, double t, double x, double y_lo, double y_hi,
                      const SearchBox& box, double tol = 1e-10, int grid_n = 257);

/// Singular-surface polyline sampled at the given abscissae.
std::vector<Vec2> singular_surface(const Potential& pot, double t,
                                   const std::vector<double>& xs, double y_lo, double y_hi,
                                   const SearchBox& box, double tol = 1e-10, int grid_n = 257);

/// First-order position of the tracked shock surface for the perturbation
/// potential: (l + eps*x_tilde, t/2 + eps*y_tilde), with the correction
/// integrals evaluated by adaptive quadrature of the symbolic derivatives of
/// f at (l, -tau/2).
Vec2 rh_perturbation_surface(const FieldExpr& f, double eps, double t, double l,
                             double quad_tol = 1e-10);

/// First-order y-distance between the variational singular surface and the
/// shock surface: eps * (f(l,-t/2) - f(l,0)
///   - 1/4 int_0^t (tau - tau^2/t) f_aa dtau + 1/2 int_0^t f_b dtau),
/// derivatives of f at (l, -tau/2). Nonzero whenever f_aa(l,0) != 0.
double first_order_surface_gap(const FieldExpr& f, double eps, double t, double l,
                     double quad_tol = 1e-10);

/// Per-marker defect of the surface-coincidence relation
///   (a+ - a-) d/dl int i* + (b+ - b-) d/dl int j* = (S+ - S-) d/dl int p*
/// with p*, i*, j* built from centered tau-differences of the stored
/// pre-image histories and S± = S0(a±, b±). Zero (to discretization error)
/// exactly when the variational and shock surfaces coincide.
std::vector<double> surface_coincidence_defects(const FrontHistory& history, const Potential& pot);

}  // namespace variational
}  // namespace pgd
