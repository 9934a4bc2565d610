#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

namespace pgd::numerics {

/// Recursive adaptive Simpson quadrature with absolute tolerance.
inline double adaptive_simpson_step(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("adaptive quadrature failed to converge");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int max_depth = 40) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// 2-D Nelder--Mead minimization. Terminates when both the simplex diameter
/// and the value spread fall below tol, or after max_iter iterations.
inline Eigen::Vector2d nelder_mead(const std::function<double(const Eigen::Vector2d&)>& f,
                                   Eigen::Vector2d start, double scale, double tol = 1e-12,
                                   int max_iter = 800) {
    using Vec2 = Eigen::Vector2d;
    struct Vertex {
        Vec2 p;
        double v;
    };
    std::array<Vertex, 3> s;
    s[0] = {start, f(start)};
    s[1] = {start + Vec2(scale, 0.0), 0.0};
    s[2] = {start + Vec2(0.0, scale), 0.0};
    s[1].v = f(s[1].p);
    s[2].v = f(s[2].p);
    auto order = [&] {
        if (s[0].v > s[1].v) std::swap(s[0], s[1]);
        if (s[1].v > s[2].v) std::swap(s[1], s[2]);
        if (s[0].v > s[1].v) std::swap(s[0], s[1]);
    };
    for (int it = 0; it < max_iter; ++it) {
        order();
        const double diam = std::max((s[1].p - s[0].p).norm(), (s[2].p - s[0].p).norm());
        if (diam < tol && s[2].v - s[0].v < tol) break;
        const Vec2 centroid = 0.5 * (s[0].p + s[1].p);
        const Vec2 xr = centroid + (centroid - s[2].p);
        const double fr = f(xr);
        if (fr < s[0].v) {
            const Vec2 xe = centroid + 2.0 * (centroid - s[2].p);
            const double fe = f(xe);
            s[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < s[1].v) {
            s[2] = {xr, fr};
        } else {
            const Vec2 xc = centroid + 0.5 * (s[2].p - centroid);
            const double fc = f(xc);
            if (fc < s[2].v) {
                s[2] = {xc, fc};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].p = s[0].p + 0.5 * (s[i].p - s[0].p);
                    s[i].v = f(s[i].p);
                }
            }
        }
    }
    order();
    return s[0].p;
}

}  // namespace pgd::numerics
