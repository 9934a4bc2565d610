#include "pgd/front_tracker.hpp"

#include <cmath>

namespace pgd {

namespace chr = characteristics;

Vec2 FrontTracker::tangent(const FrontState& state, std::size_t i) const {
    const auto& m = state.markers;
    const std::size_t n = m.size();
    const double dl = state.dl();
    auto pos = [&](std::size_t k) { return m[k].position(); };
    if (state.topology == Topology::Periodic) {
        // periodic in l with period n*dl
        return (pos((i + 1) % n) - pos((i + n - 1) % n)) / (2.0 * dl);
    }
    if (i == 0) return (-3.0 * pos(0) + 4.0 * pos(1) - pos(2)) / (2.0 * dl);
    if (i == n - 1) return (3.0 * pos(n - 1) - 4.0 * pos(n - 2) + pos(n - 3)) / (2.0 * dl);
    return (pos(i + 1) - pos(i - 1)) / (2.0 * dl);
}

Vec2 FrontTracker::front_velocity(const FrontState& state, std::size_t i) const {
    const FrontMarker& m = state.markers[i];
    if (m.P > 0.0) return {m.I / m.P, m.J / m.P};
    if (m.P < 0.0) throw ZeroMass("negative front mass at l=" + std::to_string(m.l));
    if (state.startup_velocity.size() == state.markers.size())
        return state.startup_velocity[i];
    throw ZeroMass("zero front mass with no startup velocity at l=" + std::to_string(m.l));
}

MarkerDeriv FrontTracker::rh_rhs(const FrontState& state, std::size_t i) const {
    const FrontMarker& m = state.markers[i];
    const double t = state.t;
    const Vec2 tl = tangent(state, i);
    const double xl = tl.x(), yl = tl.y();

    const double rm = chr::transported_density(*data_, Side::Minus, m.a_minus, m.b_minus, t);
    const double rp = chr::transported_density(*data_, Side::Plus, m.a_plus, m.b_plus, t);
    const SideFields& fm = data_->minus;
    const SideFields& fp = data_->plus;
    const double um = fm.u.eval(m.a_minus, m.b_minus);
    const double vm = fm.v.eval(m.a_minus, m.b_minus);
    const double up = fp.u.eval(m.a_plus, m.b_plus);
    const double vp = fp.v.eval(m.a_plus, m.b_plus);

    const Vec2 UV = front_velocity(state, i);
    const double U = UV.x(), V = UV.y();

    const double d_r = rp - rm;
    const double d_ru = rp * up - rm * um;
    const double d_rv = rp * vp - rm * vm;
    const double d_ruu = rp * up * up - rm * um * um;
    const double d_ruv = rp * up * vp - rm * um * vm;
    const double d_rvv = rp * vp * vp - rm * vm * vm;

    MarkerDeriv d;
    d.Pd = -xl * (V * d_r - d_rv) - yl * (d_ru - U * d_r);
    d.Id = -xl * (V * d_ru - d_ruv) - yl * (d_ruu - U * d_ru);
    d.Jd = -xl * (V * d_rv - d_rvv) - yl * (d_ruv - U * d_rv);
    d.vel = velocity_fudge * UV;
    return d;
}

Vec2 FrontTracker::startup_velocity_limit(double l) const {
    // t -> 0 limit of (I/P, J/P): the accumulating integrals vanish linearly,
    // so the limit velocity solves U*Pdot = Idot, V*Pdot = Jdot with the
    // rate expressions evaluated at the initial one-sided states.
    auto [a, b] = data_->curve.point(l);
    auto [xl, yl] = data_->curve.tangent(l);
    const SideState sm = data_->eval_side(Side::Minus, a, b);
    const SideState sp = data_->eval_side(Side::Plus, a, b);
    const double d_r = sp.rho - sm.rho;
    const double d_ru = sp.rho * sp.u - sm.rho * sm.u;
    const double d_rv = sp.rho * sp.v - sm.rho * sm.v;
    const double d_ruu = sp.rho * sp.u * sp.u - sm.rho * sm.u * sm.u;
    const double d_ruv = sp.rho * sp.u * sp.v - sm.rho * sm.u * sm.v;
    const double d_rvv = sp.rho * sp.v * sp.v - sm.rho * sm.v * sm.v;

    const double a0 = xl * d_rv - yl * d_ru, a1 = yl * d_r, a2 = -xl * d_r;
    const double b0 = xl * d_ruv - yl * d_ruu, b1 = yl * d_ru, b2 = -xl * d_ru;
    const double g0 = xl * d_rvv - yl * d_ruv, g1 = yl * d_rv, g2 = -xl * d_rv;

    Vec2 w{0.5 * (sm.u + sp.u), 0.5 * (sm.v + sp.v)};
    for (int it = 0; it < 100; ++it) {
        const double U = w.x(), V = w.y();
        const double Pd = a0 + a1 * U + a2 * V;
        Vec2 F{U * Pd - (b0 + b1 * U + b2 * V), V * Pd - (g0 + g1 * U + g2 * V)};
        if (F.norm() < 1e-14 * (1.0 + std::fabs(Pd))) break;
        Eigen::Matrix2d Jm;
        Jm << Pd + a1 * U - b1, a2 * U - b2,
              a1 * V - g1, Pd + a2 * V - g2;
        if (std::fabs(Jm.determinant()) < 1e-300)
            throw NoConvergence("startup velocity limit: singular system at l=" +
                                std::to_string(l));
        w -= Jm.inverse() * F;
    }
    if (!(a0 + a1 * w.x() + a2 * w.y() > 0.0))
        throw InadmissibleScenario("nonpositive initial mass accumulation rate at l=" +
                                   std::to_string(l) + " (check front orientation)");
    return w;
}

FrontState FrontTracker::initialize(int n_markers,
                                    const std::optional<InitialFrontLoad>& load) const {
    if (n_markers < 3) throw std::invalid_argument("need at least 3 front markers");
    FrontState s;
    s.t = 0.0;
    s.topology = data_->curve.topology;
    s.markers.resize(static_cast<std::size_t>(n_markers));
    s.startup_velocity.resize(s.markers.size());
    const double span = data_->curve.l_max - data_->curve.l_min;
    const double dl = s.topology == Topology::Periodic ? span / n_markers : span / (n_markers - 1);
    for (int i = 0; i < n_markers; ++i) {
        FrontMarker& m = s.markers[static_cast<std::size_t>(i)];
        m.l = data_->curve.l_min + i * dl;
        auto [x, y] = data_->curve.point(m.l);
        m.x = x;
        m.y = y;
        m.a_minus = m.a_plus = x;
        m.b_minus = m.b_plus = y;
        if (load) {
            m.P = load->P0.eval(m.l);
            m.I = load->I0.eval(m.l);
            m.J = load->J0.eval(m.l);
            if (m.P < 0.0) throw ZeroMass("negative initial front mass");
            s.startup_velocity[static_cast<std::size_t>(i)] =
                m.P > 0.0 ? Vec2{m.I / m.P, m.J / m.P} : startup_velocity_limit(m.l);
        } else {
            s.startup_velocity[static_cast<std::size_t>(i)] = startup_velocity_limit(m.l);
        }
    }
    return s;
}

void FrontTracker::refresh_preimages(FrontState& state) const {
    if (state.t == 0.0) return;  // pre-images equal the marker position at t = 0
    for (FrontMarker& m : state.markers) {
        for (Side s : {Side::Minus, Side::Plus}) {
            Vec2 q = chr::preimage(*data_, s, m.x, m.y, state.t, m.preimage(s));
            double g = data_->level_set.eval(q.x(), q.y());
            if ((s == Side::Minus && g > side_tol) || (s == Side::Plus && g < -side_tol))
                throw SideViolation("pre-image crossed the initial discontinuity at l=" +
                                    std::to_string(m.l) + ", t=" + std::to_string(state.t) +
                                    " (front left the two-characteristic region)");
            m.set_preimage(s, q);
        }
    }
}

FrontState FrontTracker::step(const FrontState& state, double dt) const {
    const std::size_t n = state.markers.size();
    std::vector<MarkerDeriv> k1(n), k2(n), k3(n), k4(n);

    auto eval_all = [&](const FrontState& s, std::vector<MarkerDeriv>& out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = rh_rhs(s, i);
    };
    auto advance = [&](const std::vector<MarkerDeriv>& k, double h) {
        FrontState s = state;
        s.t = state.t + h;
        for (std::size_t i = 0; i < n; ++i) {
            FrontMarker& m = s.markers[i];
            m.x += h * k[i].vel.x();
            m.y += h * k[i].vel.y();
            m.P += h * k[i].Pd;
            m.I += h * k[i].Id;
            m.J += h * k[i].Jd;
        }
        refresh_preimages(s);
        return s;
    };

    eval_all(state, k1);
    eval_all(advance(k1, 0.5 * dt), k2);
    eval_all(advance(k2, 0.5 * dt), k3);
    eval_all(advance(k3, dt), k4);

    FrontState out = state;
    out.t = state.t + dt;
    for (std::size_t i = 0; i < n; ++i) {
        FrontMarker& m = out.markers[i];
        m.x += dt / 6.0 * (k1[i].vel.x() + 2 * k2[i].vel.x() + 2 * k3[i].vel.x() + k4[i].vel.x());
        m.y += dt / 6.0 * (k1[i].vel.y() + 2 * k2[i].vel.y() + 2 * k3[i].vel.y() + k4[i].vel.y());
        m.P += dt / 6.0 * (k1[i].Pd + 2 * k2[i].Pd + 2 * k3[i].Pd + k4[i].Pd);
        m.I += dt / 6.0 * (k1[i].Id + 2 * k2[i].Id + 2 * k3[i].Id + k4[i].Id);
        m.J += dt / 6.0 * (k1[i].Jd + 2 * k2[i].Jd + 2 * k3[i].Jd + k4[i].Jd);
        // A front that carries nothing (no jump) legitimately keeps P = 0.
        if (m.P < 0.0 || (m.P == 0.0 && state.markers[i].P > 0.0))
            throw StepRejected("front mass would become nonpositive at l=" + std::to_string(m.l));
    }
    refresh_preimages(out);
    out.check_fold();
    return out;
}

FrontHistory FrontTracker::run(FrontState state, double dt, double t_max) const {
    FrontHistory h;
    h.states.push_back(state);
    const int n_steps = static_cast<int>(std::llround(t_max / dt));
    for (int k = 0; k < n_steps; ++k) {
        state = step(state, dt);
        h.states.push_back(state);
    }
    return h;
}

std::vector<double> FrontTracker::quadrature_P(const FrontHistory& history) const {
    const std::size_t steps = history.steps();
    if (steps < 3) throw InsufficientHistory("need at least 3 stored steps");
    const std::size_t n = history.states[0].markers.size();
    const double dl = history.states[0].dl();
    const Topology topo = history.states[0].topology;

    // d/dtau and d/dl of the pre-images over the stored grid
    auto dtau = [&](std::size_t k, std::size_t i, auto get) {
        if (k == 0)
            return (-3.0 * get(0, i) + 4.0 * get(1, i) - get(2, i)) /
                   (history.states[1].t - history.states[0].t) / 2.0;
        if (k == steps - 1)
            return (3.0 * get(k, i) - 4.0 * get(k - 1, i) + get(k - 2, i)) /
                   (history.states[k].t - history.states[k - 1].t) / 2.0;
        return (get(k + 1, i) - get(k - 1, i)) / (history.states[k + 1].t - history.states[k - 1].t);
    };
    auto dli = [&](std::size_t k, std::size_t i, auto get) {
        if (topo == Topology::Periodic)
            return (get(k, (i + 1) % n) - get(k, (i + n - 1) % n)) / (2.0 * dl);
        if (i == 0) return (-3.0 * get(k, 0) + 4.0 * get(k, 1) - get(k, 2)) / (2.0 * dl);
        if (i == n - 1)
            return (3.0 * get(k, n - 1) - 4.0 * get(k, n - 2) + get(k, n - 3)) / (2.0 * dl);
        return (get(k, i + 1) - get(k, i - 1)) / (2.0 * dl);
    };

    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0, prev = 0.0;
        for (std::size_t k = 0; k < steps; ++k) {
            double integrand = 0.0;
            for (Side s : {Side::Plus, Side::Minus}) {
                auto ga = [&](std::size_t kk, std::size_t ii) {
                    return history.states[kk].markers[ii].preimage(s).x();
                };
                auto gb = [&](std::size_t kk, std::size_t ii) {
                    return history.states[kk].markers[ii].preimage(s).y();
                };
                const Vec2 q = history.states[k].markers[i].preimage(s);
                double w = dtau(k, i, ga) * dli(k, i, gb) - dtau(k, i, gb) * dli(k, i, ga);
                double r0 = data_->side(s).rho.eval(q.x(), q.y());
                integrand += (s == Side::Plus ? 1.0 : -1.0) * r0 * w;
            }
            if (k > 0) acc += 0.5 * (history.states[k].t - history.states[k - 1].t) * (prev + integrand);
            prev = integrand;
        }
        out[i] = acc;
    }
    return out;
}

std::vector<Vec2> FrontTracker::adhesion_residual(const FrontHistory& history) const {
    const std::size_t steps = history.steps();
    if (steps < 3) throw InsufficientHistory("need at least 3 stored steps");
    const std::size_t n = history.states[0].markers.size();
    const double dl = history.states[0].dl();
    const Topology topo = history.states[0].topology;
    const double t_end = history.t_end();
    const FrontState& last = history.states.back();

    auto dtau = [&](std::size_t k, std::size_t i, auto get) {
        if (k == 0)
            return (-3.0 * get(0, i) + 4.0 * get(1, i) - get(2, i)) /
                   (history.states[1].t - history.states[0].t) / 2.0;
        if (k == steps - 1)
            return (3.0 * get(k, i) - 4.0 * get(k - 1, i) + get(k - 2, i)) /
                   (history.states[k].t - history.states[k - 1].t) / 2.0;
        return (get(k + 1, i) - get(k - 1, i)) / (history.states[k + 1].t - history.states[k - 1].t);
    };
    auto dli = [&](std::size_t k, std::size_t i, auto get) {
        if (topo == Topology::Periodic)
            return (get(k, (i + 1) % n) - get(k, (i + n - 1) % n)) / (2.0 * dl);
        if (i == 0) return (-3.0 * get(k, 0) + 4.0 * get(k, 1) - get(k, 2)) / (2.0 * dl);
        if (i == n - 1)
            return (3.0 * get(k, n - 1) - 4.0 * get(k, n - 2) + get(k, n - 3)) / (2.0 * dl);
        return (get(k, i + 1) - get(k, i - 1)) / (2.0 * dl);
    };

    std::vector<Vec2> out(n, Vec2::Zero());
    for (std::size_t i = 0; i < n; ++i) {
        const double xs = last.markers[i].x, ys = last.markers[i].y;
        Vec2 acc = Vec2::Zero(), prev = Vec2::Zero();
        for (std::size_t k = 0; k < steps; ++k) {
            Vec2 integrand = Vec2::Zero();
            for (Side s : {Side::Plus, Side::Minus}) {
                auto ga = [&](std::size_t kk, std::size_t ii) {
                    return history.states[kk].markers[ii].preimage(s).x();
                };
                auto gb = [&](std::size_t kk, std::size_t ii) {
                    return history.states[kk].markers[ii].preimage(s).y();
                };
                const Vec2 q = history.states[k].markers[i].preimage(s);
                double w = dtau(k, i, ga) * dli(k, i, gb) - dtau(k, i, gb) * dli(k, i, ga);
                const SideState st = data_->eval_side(s, q.x(), q.y());
                double sign = s == Side::Plus ? 1.0 : -1.0;
                integrand.x() += sign * (xs - q.x() - t_end * st.u) * st.rho * w;
                integrand.y() += sign * (ys - q.y() - t_end * st.v) * st.rho * w;
            }
            if (k > 0) acc += 0.5 * (history.states[k].t - history.states[k - 1].t) * (prev + integrand);
            prev = integrand;
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace pgd
