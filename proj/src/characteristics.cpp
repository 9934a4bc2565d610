#include "pgd/characteristics.hpp"

#include <cmath>

namespace pgd::characteristics {

Vec2 flow_map(const InitialData& data, Side side, double a, double b, double t) {
    const SideFields& f = data.side(side);
    return {a + t * f.u.eval(a, b), b + t * f.v.eval(a, b)};
}

Eigen::Matrix2d flow_jacobian(const InitialData& data, Side side, double a, double b, double t) {
    const SideFields& f = data.side(side);
    Eigen::Matrix2d J;
    J << 1.0 + t * f.u_a.eval(a, b), t * f.u_b.eval(a, b),
         t * f.v_a.eval(a, b), 1.0 + t * f.v_b.eval(a, b);
    return J;
}

double jacobian_D(const InitialData& data, Side side, double a, double b, double t) {
    return flow_jacobian(data, side, a, b, t).determinant();
}

double transported_density(const InitialData& data, Side side, double a, double b, double t) {
    double D = jacobian_D(data, side, a, b, t);
    if (D <= kCausticTol)
        throw CausticError("caustic: flow Jacobian " + std::to_string(D) + " at t=" +
                           std::to_string(t));
    return data.side(side).rho.eval(a, b) / D;
}

Vec2 preimage(const InitialData& data, Side side, double x, double y, double t,
              const Vec2& seed) {
    Vec2 q = seed;
    const Vec2 target{x, y};
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        Vec2 r = flow_map(data, side, q.x(), q.y(), t) - target;
        if (r.norm() < kNewtonTol) return q;
        Eigen::Matrix2d J = flow_jacobian(data, side, q.x(), q.y(), t);
        if (std::fabs(J.determinant()) < kCausticTol)
            throw SingularJacobian("preimage: singular flow Jacobian at t=" + std::to_string(t));
        q -= J.inverse() * r;
    }
    Vec2 r = flow_map(data, side, q.x(), q.y(), t) - target;
    if (r.norm() < kNewtonTol) return q;
    throw NoConvergence("preimage: Newton did not converge in " +
                        std::to_string(kNewtonMaxIter) + " iterations");
}

namespace {

Side side_of_point(const InitialData& data, double a, double b) {
    return data.level_set.eval(a, b) < 0.0 ? Side::Minus : Side::Plus;
}

double front_distance(const FrontHistory& history, const Vec2& p0, const Vec2& vel, double tau) {
    FrontState fs = history.interpolate(tau);
    Vec2 p = p0 + tau * vel;
    auto [i, s] = fs.closest_segment(p);
    const Vec2 a = fs.markers[i].position();
    const Vec2 b = fs.markers[(i + 1) % fs.markers.size()].position();
    return (a + s * (b - a) - p).norm();
}

}  // namespace

Crossing crossing_time(const InitialData& data, const FrontHistory& history, double a, double b,
                       double t_max) {
    Side s = side_of_point(data, a, b);
    const SideFields& f = data.side(s);
    const Vec2 p0{a, b};
    const Vec2 vel{f.u.eval(a, b), f.v.eval(a, b)};

    auto sign_at = [&](double tau) {
        return history.interpolate(tau).side_sign(p0 + tau * vel);
    };

    // Immediate absorption: the point already sits on the initial front.
    if (front_distance(history, p0, vel, history.t_begin()) < 1e-12) {
        FrontState fs = history.interpolate(history.t_begin());
        auto [i, frac] = fs.closest_segment(p0);
        double l0 = fs.markers[i].l + frac * fs.dl();
        return {history.t_begin(), l0};
    }

    // Scan for sign changes on a grid refined beyond the stored steps.
    const int kSub = 4;
    double t_lo = history.t_begin();
    double t_hi = std::min(t_max, history.t_end());
    int n = static_cast<int>(history.steps()) * kSub;
    n = std::max(n, 8);
    double s_prev = sign_at(t_lo);
    double bracket_lo = -1.0, bracket_hi = -1.0;
    int n_changes = 0;
    for (int i = 1; i <= n; ++i) {
        double tau = t_lo + (t_hi - t_lo) * i / n;
        double s_cur = sign_at(tau);
        if (s_cur != s_prev) {
            ++n_changes;
            if (n_changes == 1) {
                bracket_lo = t_lo + (t_hi - t_lo) * (i - 1) / n;
                bracket_hi = tau;
            }
            s_prev = s_cur;
        }
    }
    if (n_changes == 0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (n_changes > 1)
        throw FrontIntersectionAmbiguous(
            "characteristic crosses the front more than once (grazing intersection)");

    double ref = sign_at(bracket_lo);
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (bracket_lo + bracket_hi);
        if (sign_at(mid) == ref)
            bracket_lo = mid;
        else
            bracket_hi = mid;
    }
    double tau0 = 0.5 * (bracket_lo + bracket_hi);
    FrontState fs = history.interpolate(tau0);
    auto [i, frac] = fs.closest_segment(p0 + tau0 * vel);
    double l0 = fs.markers[i].l + frac * fs.dl();
    return {tau0, l0};
}

Vec2 eulerian_map_Lt(const InitialData& data, const FrontHistory& history, double a, double b,
                     double t) {
    Crossing c = crossing_time(data, history, a, b, t);
    if (c.tau0 > t) {
        Side s = side_of_point(data, a, b);
        return flow_map(data, s, a, b, t);
    }
    return history.interpolate(t).position_at(c.l0);
}

}  // namespace pgd::characteristics
