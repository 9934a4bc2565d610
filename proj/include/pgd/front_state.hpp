#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "pgd/scenario.hpp"

namespace pgd {

using Vec2 = Eigen::Vector2d;

struct FrontFold : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One Lagrangian sample of the shock surface.
struct FrontMarker {
    double l = 0.0;
    double x = 0.0, y = 0.0;
    double P = 0.0, I = 0.0, J = 0.0;  // accumulated line densities
    double a_minus = 0.0, b_minus = 0.0;
    double a_plus = 0.0, b_plus = 0.0;

    Vec2 position() const { return {x, y}; }
    Vec2 preimage(Side s) const {
        return s == Side::Minus ? Vec2{a_minus, b_minus} : Vec2{a_plus, b_plus};
    }
    void set_preimage(Side s, const Vec2& p) {
        if (s == Side::Minus) {
            a_minus = p.x();
            b_minus = p.y();
        } else {
            a_plus = p.x();
            b_plus = p.y();
        }
    }
};

/// Ordered marker chain at a fixed time; discrete representation of the surface.
struct FrontState {
    double t = 0.0;
    Topology topology = Topology::Open;
    std::vector<FrontMarker> markers;
    // Front velocity used when P = 0 (startup limit at t = 0).
    std::vector<Vec2> startup_velocity;

    std::size_t size() const { return markers.size(); }
    double dl() const { return markers.size() > 1 ? markers[1].l - markers[0].l : 1.0; }

    /// Adjacent markers must stay distinct; throws FrontFold otherwise.
    void check_fold(double tol = 1e-12) const;

    /// Piecewise-linear front position at parameter l.
    Vec2 position_at(double l) const;

    /// Signed side of a point relative to the marker polyline: positive on the
    /// side the oriented tangent's left normal points to.
    double side_sign(const Vec2& p) const;

    /// Index of the polyline segment closest to p, plus local coordinate in [0,1].
    std::pair<std::size_t, double> closest_segment(const Vec2& p) const;
};

/// Sequence of accepted front states at increasing times.
struct FrontHistory {
    std::vector<FrontState> states;

    const FrontState& at_step(std::size_t i) const { return states[i]; }
    std::size_t steps() const { return states.size(); }
    double t_begin() const { return states.front().t; }
    double t_end() const { return states.back().t; }

    /// Linear-in-time interpolation of the marker chain.
    FrontState interpolate(double t) const;
};

}  // namespace pgd
