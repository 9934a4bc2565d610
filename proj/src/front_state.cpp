#include "pgd/front_state.hpp"

#include <algorithm>
#include <cmath>

namespace pgd {

void FrontState::check_fold(double tol) const {
    for (std::size_t i = 1; i < markers.size(); ++i) {
        double dx = markers[i].x - markers[i - 1].x;
        double dy = markers[i].y - markers[i - 1].y;
        if (std::hypot(dx, dy) <= tol)
            throw FrontFold("adjacent front markers collided near l=" +
                            std::to_string(markers[i].l));
    }
}

Vec2 FrontState::position_at(double l) const {
    if (markers.empty()) throw std::runtime_error("empty front state");
    if (l <= markers.front().l) return markers.front().position();
    if (l >= markers.back().l) return markers.back().position();
    auto it = std::lower_bound(markers.begin(), markers.end(), l,
                               [](const FrontMarker& m, double v) { return m.l < v; });
    const FrontMarker& hi = *it;
    const FrontMarker& lo = *(it - 1);
    double w = (l - lo.l) / (hi.l - lo.l);
    return (1.0 - w) * lo.position() + w * hi.position();
}

std::pair<std::size_t, double> FrontState::closest_segment(const Vec2& p) const {
    std::size_t best = 0;
    double best_s = 0.0;
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t nseg = markers.size() - 1 + (topology == Topology::Periodic ? 1 : 0);
    for (std::size_t i = 0; i < nseg; ++i) {
        const Vec2 a = markers[i].position();
        const Vec2 b = markers[(i + 1) % markers.size()].position();
        Vec2 d = b - a;
        double len2 = d.squaredNorm();
        double s = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
        double d2 = (a + s * d - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
            best_s = s;
        }
    }
    return {best, best_s};
}

double FrontState::side_sign(const Vec2& p) const {
    auto [i, s] = closest_segment(p);
    const Vec2 a = markers[i].position();
    const Vec2 b = markers[(i + 1) % markers.size()].position();
    Vec2 d = b - a;
    Vec2 r = p - (a + s * d);
    double cross = d.x() * r.y() - d.y() * r.x();
    return cross >= 0.0 ? 1.0 : -1.0;
}

FrontState FrontHistory::interpolate(double t) const {
    if (states.empty()) throw std::runtime_error("empty front history");
    if (t <= states.front().t) return states.front();
    if (t >= states.back().t) return states.back();
    auto it = std::lower_bound(states.begin(), states.end(), t,
                               [](const FrontState& s, double v) { return s.t < v; });
    const FrontState& hi = *it;
    const FrontState& lo = *(it - 1);
    double w = (t - lo.t) / (hi.t - lo.t);
    FrontState out = lo;
    out.t = t;
    for (std::size_t i = 0; i < out.markers.size(); ++i) {
        FrontMarker& m = out.markers[i];
        const FrontMarker& h = hi.markers[i];
        m.x = (1.0 - w) * m.x + w * h.x;
        m.y = (1.0 - w) * m.y + w * h.y;
        m.P = (1.0 - w) * m.P + w * h.P;
        m.I = (1.0 - w) * m.I + w * h.I;
        m.J = (1.0 - w) * m.J + w * h.J;
        m.a_minus = (1.0 - w) * m.a_minus + w * h.a_minus;
        m.b_minus = (1.0 - w) * m.b_minus + w * h.b_minus;
        m.a_plus = (1.0 - w) * m.a_plus + w * h.a_plus;
        m.b_plus = (1.0 - w) * m.b_plus + w * h.b_plus;
    }
    return out;
}

}  // namespace pgd
