#include "pgd/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pgd/characteristics.hpp"

namespace pgd::oracle {

namespace {

struct Particle {
    Vec2 p0, vel;
    double m, mu, mv;
    double s_init;
    bool alive = true;
};

double bin_l_value(const FrontState& fs, const Vec2& p) {
    auto [i, frac] = fs.closest_segment(p);
    return fs.markers[i].l + frac * fs.dl();
}

}  // namespace

StickyResult sticky_run(const InitialData& data, const FrontHistory& history, double h,
                        double dt, double t_max, const Box& seed_box) {
    const FrontState& s0 = history.at_step(0);
    const double dl = s0.dl();
    const double l0 = s0.markers.front().l;

    StickyResult R;
    R.bins.resize(s0.size());
    for (std::size_t i = 0; i < s0.size(); ++i) {
        const FrontMarker& m = s0.markers[i];
        R.bins[i].l = m.l;
        R.bins[i].mass = m.P * dl;
        R.bins[i].mom_u = m.I * dl;
        R.bins[i].mom_v = m.J * dl;
    }

    std::vector<Particle> parts;
    for (double a = seed_box.x0 + 0.5 * h; a < seed_box.x1; a += h)
        for (double b = seed_box.y0 + 0.5 * h; b < seed_box.y1; b += h) {
            const Side side = data.level_set.eval(a, b) < 0.0 ? Side::Minus : Side::Plus;
            const SideState st = data.eval_side(side, a, b);
            Particle p;
            p.p0 = {a, b};
            p.vel = {st.u, st.v};
            p.m = st.rho * h * h;
            p.mu = p.m * st.u;
            p.mv = p.m * st.v;
            p.s_init = s0.side_sign(p.p0);
            parts.push_back(p);
        }

    for (const auto& b : R.bins) {
        R.initial_mass += b.mass;
        R.initial_mom_u += b.mom_u;
        R.initial_mom_v += b.mom_v;
    }
    for (const auto& p : parts) {
        R.initial_mass += p.m;
        R.initial_mom_u += p.mu;
        R.initial_mom_v += p.mv;
    }

    const double t_end = std::min(t_max, history.t_end());
    const int n_steps = std::max(1, static_cast<int>(std::ceil(t_end / dt)));
    for (int k = 1; k <= n_steps; ++k) {
        const double t = std::min(k * dt, t_end);
        const FrontState fs = history.interpolate(t);
        for (auto& p : parts) {
            if (!p.alive) continue;
            const Vec2 pos = p.p0 + t * p.vel;
            if (fs.side_sign(pos) * p.s_init < 0.0) {
                const double lv = bin_l_value(fs, pos);
                auto idx = static_cast<long>(std::llround((lv - l0) / dl));
                idx = std::clamp(idx, 0L, static_cast<long>(R.bins.size()) - 1L);
                R.bins[static_cast<std::size_t>(idx)].mass += p.m;
                R.bins[static_cast<std::size_t>(idx)].mom_u += p.mu;
                R.bins[static_cast<std::size_t>(idx)].mom_v += p.mv;
                p.alive = false;
            }
        }
    }

    for (const auto& p : parts) {
        if (!p.alive) continue;
        R.free_mass += p.m;
        R.free_mom_u += p.mu;
        R.free_mom_v += p.mv;
    }
    return R;
}

namespace {

struct QuadNode {
    Vec2 p0, vel;
    double wm;    // rho0 * quadrature weight
    double tau0;  // absorption time, +inf if free
};

void check_support(const FieldExpr& phi, const Box& box, const char* name) {
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        const double x = box.x0 + (box.x1 - box.x0) * i / n;
        const double y = box.y0 + (box.y1 - box.y0) * i / n;
        for (double v : {phi.eval(x, box.y0), phi.eval(x, box.y1), phi.eval(box.x0, y),
                         phi.eval(box.x1, y)})
            if (std::fabs(v) > 1e-12)
                throw SupportViolation(std::string(name) +
                                       " is not negligible on the box boundary");
    }
}

/// Per-marker trapezoid weights in l (half-weight at open ends).
std::vector<double> l_weights(const FrontState& fs) {
    std::vector<double> w(fs.size(), fs.dl());
    if (fs.topology == Topology::Open && fs.size() > 1) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    return w;
}

}  // namespace

WeakResidual weak_residual(const InitialData& data, const FrontHistory& history,
                           const FieldExpr& f, const FieldExpr& g, const FieldExpr& h_fn,
                           double t1, double t2, const Box& box, int n_cells, int n_tau) {
    check_support(f, box, "f");
    check_support(g, box, "g");
    check_support(h_fn, box, "h");

    const FieldExpr fx = f.derivative("x"), fy = f.derivative("y");
    const FieldExpr gx = g.derivative("x"), gy = g.derivative("y");
    const FieldExpr hx = h_fn.derivative("x"), hy = h_fn.derivative("y");

    // The test functions live in (x,y); the smooth parts integrate over the
    // initial plane, so expand the node region by the maximum drift.
    double vmax = 0.0;
    for (int i = 0; i <= 16; ++i)
        for (int j = 0; j <= 16; ++j) {
            const double a = box.x0 + (box.x1 - box.x0) * i / 16;
            const double b = box.y0 + (box.y1 - box.y0) * j / 16;
            for (Side s : {Side::Minus, Side::Plus}) {
                const SideState st = data.eval_side(s, a, b);
                vmax = std::max({vmax, std::fabs(st.u), std::fabs(st.v)});
            }
        }
    const double margin = vmax * t2 * 1.05 + 1e-6;
    const Box lag{box.x0 - margin, box.x1 + margin, box.y0 - margin, box.y1 + margin};

    const double ca = (lag.x1 - lag.x0) / n_cells;
    const double cb = (lag.y1 - lag.y0) / n_cells;
    const double gauss = 1.0 / std::sqrt(3.0);
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n_cells) * n_cells * 4);
    for (int i = 0; i < n_cells; ++i)
        for (int j = 0; j < n_cells; ++j) {
            const double ac = lag.x0 + (i + 0.5) * ca;
            const double bc = lag.y0 + (j + 0.5) * cb;
            for (int qa = 0; qa < 2; ++qa)
                for (int qb = 0; qb < 2; ++qb) {
                    const double a = ac + (qa == 0 ? -1.0 : 1.0) * 0.5 * ca * gauss;
                    const double b = bc + (qb == 0 ? -1.0 : 1.0) * 0.5 * cb * gauss;
                    const Side side =
                        data.level_set.eval(a, b) < 0.0 ? Side::Minus : Side::Plus;
                    const SideState st = data.eval_side(side, a, b);
                    QuadNode q;
                    q.p0 = {a, b};
                    q.vel = {st.u, st.v};
                    q.wm = st.rho * ca * cb / 4.0;
                    q.tau0 = characteristics::crossing_time(data, history, a, b, t2).tau0;
                    nodes.push_back(q);
                }
        }

    // One snapshot evaluates all six integrals needed at a given time.
    struct Snapshot {
        double M1, M2, M3;  // measures tested against f, g, h
        double A1, A2, A3;  // transport terms of the three identities
    };
    auto snapshot = [&](double tau) {
        Snapshot s{0, 0, 0, 0, 0, 0};
        for (const auto& q : nodes) {
            if (tau >= q.tau0) continue;
            const Vec2 p = q.p0 + tau * q.vel;
            const double x = p.x(), y = p.y();
            const double u = q.vel.x(), v = q.vel.y();
            s.M1 += f.eval(x, y) * q.wm;
            s.M2 += g.eval(x, y) * u * q.wm;
            s.M3 += h_fn.eval(x, y) * v * q.wm;
            s.A1 += (fx.eval(x, y) * u + fy.eval(x, y) * v) * q.wm;
            s.A2 += (gx.eval(x, y) * u + gy.eval(x, y) * v) * u * q.wm;
            s.A3 += (hx.eval(x, y) * u + hy.eval(x, y) * v) * v * q.wm;
        }
        const FrontState fs = history.interpolate(tau);
        const std::vector<double> wl = l_weights(fs);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const FrontMarker& m = fs.markers[i];
            const double x = m.x, y = m.y;
            const double U = m.P > 0.0 ? m.I / m.P : 0.0;
            const double V = m.P > 0.0 ? m.J / m.P : 0.0;
            s.M1 += f.eval(x, y) * m.P * wl[i];
            s.M2 += g.eval(x, y) * m.I * wl[i];
            s.M3 += h_fn.eval(x, y) * m.J * wl[i];
            s.A1 += (fx.eval(x, y) * m.I + fy.eval(x, y) * m.J) * wl[i];
            s.A2 += (gx.eval(x, y) * U + gy.eval(x, y) * V) * m.I * wl[i];
            s.A3 += (hx.eval(x, y) * U + hy.eval(x, y) * V) * m.J * wl[i];
        }
        return s;
    };

    double T1 = 0.0, T2 = 0.0, T3 = 0.0;
    Snapshot first{}, last{};
    Snapshot prev{};
    for (int k = 0; k <= n_tau; ++k) {
        const double tau = t1 + (t2 - t1) * k / n_tau;
        const Snapshot s = snapshot(tau);
        if (k == 0) first = s;
        if (k == n_tau) last = s;
        if (k > 0) {
            const double hstep = (t2 - t1) / n_tau;
            T1 += 0.5 * hstep * (s.A1 + prev.A1);
            T2 += 0.5 * hstep * (s.A2 + prev.A2);
            T3 += 0.5 * hstep * (s.A3 + prev.A3);
        }
        prev = s;
    }

    WeakResidual out;
    out.mass = (last.M1 - first.M1) - T1;
    out.mom_u = (last.M2 - first.M2) - T2;
    out.mom_v = (last.M3 - first.M3) - T3;
    return out;
}

}  // namespace pgd::oracle
