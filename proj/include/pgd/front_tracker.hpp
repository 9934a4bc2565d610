#pragma once

#include <optional>

#include "pgd/characteristics.hpp"
#include "pgd/front_state.hpp"
#include "pgd/scenario.hpp"

namespace pgd {

struct ZeroMass : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SideViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientHistory : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nonzero data carried by the front at t = 0 (the constant-state regime
/// admits arbitrary profiles along the initial curve).
struct InitialFrontLoad {
    FieldExpr P0, I0, J0;  // expressions in l
};

struct MarkerDeriv {
    double Pd = 0.0, Id = 0.0, Jd = 0.0;
    Vec2 vel{0.0, 0.0};
};

/// Lagrangian marker integration of the shock-front balance system: the
/// marker chain carries accumulated mass/momentum line densities and moves
/// with velocity (I/P, J/P), driven by the one-sided free-streaming states
/// taken at the characteristic pre-images.
class FrontTracker {
public:
    explicit FrontTracker(const InitialData& data) : data_(&data) {}

    // Multiplies the front velocity used for marker motion; a negative
    // control knob for the identity checks, 1 for physical runs.
    double velocity_fudge = 1.0;
    // Tolerance for the pre-image side constraint G(a_minus,b_minus) <= tol.
    double side_tol = 1e-9;

    FrontState initialize(int n_markers,
                          const std::optional<InitialFrontLoad>& load = std::nullopt) const;

    /// Marker velocity: (I/P, J/P), or the stored startup limit while P = 0.
    Vec2 front_velocity(const FrontState& state, std::size_t i) const;

    MarkerDeriv rh_rhs(const FrontState& state, std::size_t i) const;

    /// Newton-refresh of both pre-images of every marker at the state's time.
    void refresh_preimages(FrontState& state) const;

    /// One classical RK4 step with pre-image refresh at every stage.
    FrontState step(const FrontState& state, double dt) const;

    /// Integrate to t_max recording every accepted state.
    FrontHistory run(FrontState state, double dt, double t_max) const;

    /// Per-marker residual of the adhesion identity, evaluated by trapezoid
    /// quadrature over the stored pre-image history.
    std::vector<Vec2> adhesion_residual(const FrontHistory& history) const;

    /// P accumulated by direct quadrature of the pre-image sweep integrals,
    /// for comparison against the ODE-accumulated marker P.
    std::vector<double> quadrature_P(const FrontHistory& history) const;

    /// Tangent (x_l, y_l) at marker i: centered differences, second-order
    /// one-sided at open ends, wrap-around for periodic fronts.
    Vec2 tangent(const FrontState& state, std::size_t i) const;

    const InitialData& data() const { return *data_; }

private:
    const InitialData* data_;

    Vec2 startup_velocity_limit(double l) const;
};

}  // namespace pgd
