#include "pgd/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pgd/numerics.hpp"

namespace pgd::variational {

Potential Potential::smooth(FieldExpr S0) {
    Potential p;
    p.piecewise_ = false;
    p.up_ = S0;
    p.up_a_ = S0.derivative("a");
    p.up_b_ = S0.derivative("b");
    return p;
}

Potential Potential::piecewise(FieldExpr indicator, FieldExpr upper, FieldExpr lower) {
    Potential p;
    p.piecewise_ = true;
    p.indicator_ = indicator;
    p.indicator_b_ = indicator.derivative("b");
    p.up_ = upper;
    p.up_a_ = upper.derivative("a");
    p.up_b_ = upper.derivative("b");
    p.lo_ = lower;
    p.lo_a_ = lower.derivative("a");
    p.lo_b_ = lower.derivative("b");
    return p;
}

Potential Potential::perturbation(FieldExpr f, double eps) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", eps);
    const std::string lower = "b + (" + std::string(buf) + ") * (" + f.str() + ")";
    Potential p = piecewise(FieldExpr::parse(lower), FieldExpr::constant(0.0),
                            FieldExpr::parse(lower));
    p.eps_ = eps;
    return p;
}

double Potential::value(double a, double b) const {
    if (!piecewise_) return up_(a, b);
    return indicator_(a, b) > 0.0 ? up_(a, b) : lo_(a, b);
}

Vec2 Potential::gradient(double a, double b) const {
    if (!piecewise_) return {up_a_(a, b), up_b_(a, b)};
    if (indicator_(a, b) > 0.0) return {up_a_(a, b), up_b_(a, b)};
    return {lo_a_(a, b), lo_b_(a, b)};
}

double Potential::curve_b(double a) const {
    if (!piecewise_) throw std::logic_error("curve_b requires a piecewise potential");
    double b = 0.0;
    for (int it = 0; it < 50; ++it) {
        const double g = indicator_(a, b);
        if (std::fabs(g) < 1e-14) return b;
        b -= g / indicator_b_(a, b);
    }
    throw std::runtime_error("branch-curve Newton failed to converge");
}

namespace {

double cost(const Potential& pot, double t, double x, double y, double a, double b) {
    const double da = x - a, db = y - b;
    return pot.value(a, b) + (da * da + db * db) / (2.0 * t);
}

}  // namespace

MinimizerSet hopf_lax(const Potential& pot, double t, double x, double y, const SearchBox& box,
                      int grid_n, double delta_cluster, double delta_val, double cluster_radius) {
    if (!(t > 0.0)) throw std::invalid_argument("hopf_lax requires t > 0");
    auto F = [&](const Vec2& p) { return cost(pot, t, x, y, p.x(), p.y()); };

    const double ha = (box.a_max - box.a_min) / (grid_n - 1);
    const double hb = (box.b_max - box.b_min) / (grid_n - 1);
    std::vector<double> grid(static_cast<std::size_t>(grid_n) * grid_n);
    double grid_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i) {
            const double v =
                F({box.a_min + i * ha, box.b_min + j * hb});
            grid[static_cast<std::size_t>(j) * grid_n + i] = v;
            grid_min = std::min(grid_min, v);
        }

    std::vector<std::pair<Vec2, double>> candidates;
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i) {
            if (grid[static_cast<std::size_t>(j) * grid_n + i] > grid_min + delta_cluster)
                continue;
            const Vec2 p = numerics::nelder_mead(
                F, {box.a_min + i * ha, box.b_min + j * hb}, std::max(ha, hb));
            candidates.emplace_back(p, F(p));
        }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) best = std::min(best, c.second);

    std::vector<std::pair<Vec2, double>> kept;
    for (const auto& c : candidates)
        if (c.second <= best + delta_val) kept.push_back(c);
    std::sort(kept.begin(), kept.end(), [](const auto& u, const auto& v) {
        if (u.first.x() != v.first.x()) return u.first.x() < v.first.x();
        return u.first.y() < v.first.y();
    });

    MinimizerSet out;
    out.psi = best;
    for (const auto& c : kept) {
        bool dup = false;
        for (const auto& m : out.minimizers)
            if ((m - c.first).norm() < cluster_radius) dup = true;
        if (!dup) out.minimizers.push_back(c.first);
    }

    const double margin_a = std::max(ha, 1e-9), margin_b = std::max(hb, 1e-9);
    for (const auto& m : out.minimizers)
        if (m.x() < box.a_min + margin_a || m.x() > box.a_max - margin_a ||
            m.y() < box.b_min + margin_b || m.y() > box.b_max - margin_b)
            throw BoxTooSmall("global minimizer on the search box boundary; enlarge the box");
    return out;
}

namespace {

/// Polishes a branch minimizer from a previous nearby seed.
Vec2 polish(const Potential& pot, double t, double x, double y, Vec2 seed, double scale) {
    auto F = [&](const Vec2& p) { return cost(pot, t, x, y, p.x(), p.y()); };
    return numerics::nelder_mead(F, seed, scale);
}

}  // namespace

double singular_point(const Potential& pot, double t, double x, double y_lo, double y_hi,
                      const SearchBox& box, double tol, int grid_n) {
    // Seed the two minimizer branches from full global searches at the ends.
    const MinimizerSet lo_set = hopf_lax(pot, t, x, y_lo, box, grid_n);
    const MinimizerSet hi_set = hopf_lax(pot, t, x, y_hi, box, grid_n);
    Vec2 m_lo = lo_set.minimizers.front();
    Vec2 m_hi = hi_set.minimizers.front();
    if ((m_lo - m_hi).norm() < 1e-6)
        throw NoJumpDetected("scan endpoints share a minimizer branch");

    const double scale = 1e-3 * std::max({1.0, std::fabs(t), (m_lo - m_hi).norm()});
    double a = y_lo, b = y_hi;
    // Equal-cost condition between the two branches locates the surface.
    auto branch_gap = [&](double y, Vec2& seed_lo, Vec2& seed_hi) {
        seed_lo = polish(pot, t, x, y, seed_lo, scale);
        seed_hi = polish(pot, t, x, y, seed_hi, scale);
        return cost(pot, t, x, y, seed_lo.x(), seed_lo.y()) -
               cost(pot, t, x, y, seed_hi.x(), seed_hi.y());
    };
    Vec2 sl = m_lo, sh = m_hi;
    double g_lo = branch_gap(a, sl, sh);
    if ((sl - sh).norm() < 1e-6)
        throw NoJumpDetected("both branch seeds polish to one minimizer at the lower end");
    sl = m_lo;
    sh = m_hi;
    double g_hi = branch_gap(b, sl, sh);
    if ((sl - sh).norm() < 1e-6)
        throw NoJumpDetected("both branch seeds polish to one minimizer at the upper end");
    if (g_lo == 0.0) return a;
    if (g_hi == 0.0) return b;
    if ((g_lo > 0.0) == (g_hi > 0.0))
        throw NoJumpDetected("branch costs do not change order across the scan segment");

    Vec2 cl = m_lo, ch = m_hi;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        Vec2 tl = cl, th = ch;
        const double g = branch_gap(mid, tl, th);
        cl = tl;
        ch = th;
        if (g == 0.0) return mid;
        if ((g > 0.0) == (g_lo > 0.0)) {
            a = mid;
            g_lo = g;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

std::vector<Vec2> singular_surface(const Potential& pot, double t, const std::vector<double>& xs,
                                   double y_lo, double y_hi, const SearchBox& box, double tol,
                                   int grid_n) {
    std::vector<Vec2> out;
    out.reserve(xs.size());
    for (double x : xs)
        out.push_back({x, singular_point(pot, t, x, y_lo, y_hi, box, tol, grid_n)});
    return out;
}

Vec2 rh_perturbation_surface(const FieldExpr& f, double eps, double t, double l,
                             double quad_tol) {
    const FieldExpr fa = f.derivative("a");
    const FieldExpr fb = f.derivative("b");
    const FieldExpr faa = fa.derivative("a");

    auto at = [&](const FieldExpr& e, double tau) { return e(l, -0.5 * tau); };

    const double I_tau_faa =
        numerics::adaptive_simpson([&](double tau) { return tau * at(faa, tau); }, 0.0, t,
                                   quad_tol);
    const double I_fb =
        numerics::adaptive_simpson([&](double tau) { return at(fb, tau); }, 0.0, t, quad_tol);
    const double I_tau2_faa =
        numerics::adaptive_simpson([&](double tau) { return tau * tau * at(faa, tau); }, 0.0, t,
                                   quad_tol);
    const double y_tilde = -f(l, 0.0) - 0.25 * I_tau_faa + 0.5 * I_fb +
                           (t > 0.0 ? I_tau2_faa / (4.0 * t) : 0.0);

    // x_tilde accumulates its own t-derivative (1/2s) int_0^s f_a dtau.
    auto x_tilde_rate = [&](double s) {
        if (s <= 1e-12) return 0.5 * at(fa, 0.0);
        const double inner = numerics::adaptive_simpson(
            [&](double tau) { return at(fa, tau); }, 0.0, s, quad_tol);
        return inner / (2.0 * s);
    };
    const double x_tilde = numerics::adaptive_simpson(x_tilde_rate, 0.0, t, quad_tol);

    return {l + eps * x_tilde, 0.5 * t + eps * y_tilde};
}

double first_order_surface_gap(const FieldExpr& f, double eps, double t, double l, double quad_tol) {
    const FieldExpr fb = f.derivative("b");
    const FieldExpr faa = f.derivative("a").derivative("a");
    auto at = [&](const FieldExpr& e, double tau) { return e(l, -0.5 * tau); };
    const double I_weighted_faa = numerics::adaptive_simpson(
        [&](double tau) { return (tau - tau * tau / t) * at(faa, tau); }, 0.0, t, quad_tol);
    const double I_fb =
        numerics::adaptive_simpson([&](double tau) { return at(fb, tau); }, 0.0, t, quad_tol);
    return eps * (f(l, -0.5 * t) - f(l, 0.0) - 0.25 * I_weighted_faa + 0.5 * I_fb);
}

namespace {

/// Centered l-derivative of a per-marker array.
std::vector<double> d_dl(const std::vector<double>& v, double dl, Topology topo) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (topo == Topology::Periodic) {
            out[i] = (v[(i + 1) % n] - v[(i + n - 1) % n]) / (2.0 * dl);
        } else if (i == 0) {
            out[i] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dl);
        } else if (i == n - 1) {
            out[i] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dl);
        } else {
            out[i] = (v[i + 1] - v[i - 1]) / (2.0 * dl);
        }
    }
    return out;
}

}  // namespace

std::vector<double> surface_coincidence_defects(const FrontHistory& history, const Potential& pot) {
    const std::size_t steps = history.steps();
    if (steps < 3) throw InsufficientHistory("need at least three stored states");
    const std::size_t n = history.at_step(0).size();

    // Per-step marker quantities and their tau-derivatives over the history.
    auto field = [&](std::size_t k, std::size_t i, int which) {
        const FrontMarker& m = history.at_step(k).markers[i];
        switch (which) {
            case 0: return m.a_plus;
            case 1: return m.b_plus;
            case 2: return m.a_minus;
            case 3: return m.b_minus;
            case 4: return pot.value(m.a_plus, m.b_plus);
            default: return pot.value(m.a_minus, m.b_minus);
        }
    };
    auto tau_deriv = [&](std::size_t k, std::size_t i, int which) {
        const auto t_at = [&](std::size_t q) { return history.at_step(q).t; };
        if (k == 0)
            return (field(1, i, which) - field(0, i, which)) / (t_at(1) - t_at(0));
        if (k == steps - 1)
            return (field(k, i, which) - field(k - 1, i, which)) / (t_at(k) - t_at(k - 1));
        return (field(k + 1, i, which) - field(k - 1, i, which)) / (t_at(k + 1) - t_at(k - 1));
    };

    std::vector<double> Ip(n, 0.0), Ii(n, 0.0), Ij(n, 0.0);
    std::vector<double> prev_p(n), prev_i(n), prev_j(n);
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<double> ps(n), is(n), js(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double da = field(k, i, 0) - field(k, i, 2);
            const double db = field(k, i, 1) - field(k, i, 3);
            const double dS = field(k, i, 4) - field(k, i, 5);
            const double at_mean = 0.5 * (tau_deriv(k, i, 0) + tau_deriv(k, i, 2));
            const double bt_mean = 0.5 * (tau_deriv(k, i, 1) + tau_deriv(k, i, 3));
            const double St_mean = 0.5 * (tau_deriv(k, i, 4) + tau_deriv(k, i, 5));
            ps[i] = db * at_mean - da * bt_mean;
            is[i] = db * St_mean - dS * bt_mean;
            js[i] = da * St_mean - dS * at_mean;
        }
        if (k > 0) {
            const double h = history.at_step(k).t - history.at_step(k - 1).t;
            for (std::size_t i = 0; i < n; ++i) {
                Ip[i] += 0.5 * h * (ps[i] + prev_p[i]);
                Ii[i] += 0.5 * h * (is[i] + prev_i[i]);
                Ij[i] += 0.5 * h * (js[i] + prev_j[i]);
            }
        }
        prev_p.swap(ps);
        prev_i.swap(is);
        prev_j.swap(js);
    }

    const FrontState& last = history.at_step(steps - 1);
    const double dl = last.dl();
    const auto dIp = d_dl(Ip, dl, last.topology);
    const auto dIi = d_dl(Ii, dl, last.topology);
    const auto dIj = d_dl(Ij, dl, last.topology);

    std::vector<double> defect(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FrontMarker& m = last.markers[i];
        const double da = m.a_plus - m.a_minus;
        const double db = m.b_plus - m.b_minus;
        const double dS = pot.value(m.a_plus, m.b_plus) - pot.value(m.a_minus, m.b_minus);
        defect[i] = da * dIi[i] + db * dIj[i] - dS * dIp[i];
    }
    return defect;
}

}  // namespace pgd::variational
