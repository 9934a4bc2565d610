#pragma once

#include "pgd/front_state.hpp"
#include "pgd/scenario.hpp"

namespace pgd {

struct CausticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularJacobian : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FrontIntersectionAmbiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace characteristics {

inline constexpr double kCausticTol = 1e-12;
inline constexpr double kNewtonTol = 1e-10;
inline constexpr int kNewtonMaxIter = 50;

/// Free-streaming position of the Lagrangian point (a,b) after time t.
Vec2 flow_map(const InitialData& data, Side side, double a, double b, double t);

/// Jacobian determinant of the flow map; a sign change marks a caustic.
double jacobian_D(const InitialData& data, Side side, double a, double b, double t);

/// 2x2 Jacobian matrix of the flow map with respect to (a,b).
Eigen::Matrix2d flow_jacobian(const InitialData& data, Side side, double a, double b, double t);

/// Density carried along characteristics; throws CausticError when D <= tol.
double transported_density(const InitialData& data, Side side, double a, double b, double t);

/// Newton inversion of the flow map. The seed must lie in the basin of the
/// target; throws NoConvergence or SingularJacobian otherwise.
Vec2 preimage(const InitialData& data, Side side, double x, double y, double t,
              const Vec2& seed);

/// Position of the Lagrangian point (a,b) at time t, accounting for
/// absorption by the tracked front: free streaming until the characteristic
/// first crosses the front, then riding the absorbing marker.
Vec2 eulerian_map_Lt(const InitialData& data, const FrontHistory& history, double a, double b,
                     double t);

/// First crossing time of the straight characteristic from (a,b) with the
/// tracked front, or +inf if it stays free up to t_max. Also reports the
/// absorbing parameter l0.
struct Crossing {
    double tau0;
    double l0;
};
Crossing crossing_time(const InitialData& data, const FrontHistory& history, double a, double b,
                       double t_max);

}  // namespace characteristics
}  // namespace pgd
