#include "pgd/dispersion.hpp"

#include <cmath>
#include <complex>

namespace pgd::dispersion {

std::array<Root, 2> dispersion_roots(double K, double xi) {
    const std::complex<double> lam = std::sqrt(std::complex<double>(0.0, -K * xi));
    Root r1{lam.real(), lam.imag()};
    Root r2{-lam.real(), -lam.imag()};
    if (r1.delta <= r2.delta) return {r1, r2};
    return {r2, r1};
}

namespace {

double fit_slope(const std::vector<double>& t, const std::vector<double>& logamp) {
    // least-squares slope
    double n = static_cast<double>(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += logamp[i];
        stt += t[i] * t[i];
        sty += t[i] * logamp[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

GrowthMeasurement measure_exact(double K, double xi, double t_max, double amplitude) {
    auto roots = dispersion_roots(K, xi);
    const std::complex<double> l1{roots[0].sigma, roots[0].delta};
    const std::complex<double> l2{roots[1].sigma, roots[1].delta};
    const std::complex<double> I{0.0, 1.0};
    // P(0) = amplitude, P_t(0) = 0 splits the mode across both roots
    std::complex<double> c1{0.0, 0.0}, c2{0.0, 0.0};
    if (std::abs(l1 - l2) < 1e-300) {
        c1 = amplitude;
    } else {
        c1 = amplitude * (-l2) / (l1 - l2);
        c2 = amplitude * l1 / (l1 - l2);
    }
    const int n = 400;
    std::vector<double> ts, la;
    for (int i = n / 2; i <= n; ++i) {
        double t = t_max * i / n;
        double amp = std::abs(c1 * std::exp(I * l1 * t) + c2 * std::exp(I * l2 * t));
        if (!std::isfinite(amp)) throw BlowUp("exact mode overflow", t);
        ts.push_back(t);
        la.push_back(std::log(std::max(amp, 1e-300)));
    }
    return {fit_slope(ts, la), std::sqrt(std::fabs(K) * std::fabs(xi) / 2.0), 0};
}

GrowthMeasurement measure_fd(double K, double xi, double t_max, int N, double amplitude) {
    // periodic domain [0, 2pi); xi must be an integer mode count
    const double L = 2.0 * M_PI;
    const double dx = L / N;
    const double dt = std::min(t_max / 1024.0, 0.05 * dx);
    const int n_steps = static_cast<int>(std::ceil(t_max / dt));

    std::vector<double> prev(N), cur(N), next(N);
    for (int i = 0; i < N; ++i) prev[i] = amplitude * std::cos(xi * i * dx);
    auto dxc = [&](const std::vector<double>& P, int i) {
        return (P[(i + 1) % N] - P[(i + N - 1) % N]) / (2.0 * dx);
    };
    for (int i = 0; i < N; ++i) cur[i] = prev[i] + 0.5 * dt * dt * K * dxc(prev, i);

    auto mode_amp = [&](const std::vector<double>& P) {
        double re = 0, im = 0;
        for (int i = 0; i < N; ++i) {
            re += P[i] * std::cos(xi * i * dx);
            im -= P[i] * std::sin(xi * i * dx);
        }
        return 2.0 * std::hypot(re, im) / N;
    };

    std::vector<double> ts, la;
    for (int k = 1; k <= n_steps; ++k) {
        for (int i = 0; i < N; ++i) next[i] = 2.0 * cur[i] - prev[i] + dt * dt * K * dxc(cur, i);
        prev.swap(cur);
        cur.swap(next);
        double t = (k + 1) * dt;
        double amp = mode_amp(cur);
        if (!std::isfinite(amp)) throw BlowUp("finite-difference overflow", t);
        if (t >= t_max / 2.0) {
            ts.push_back(t);
            la.push_back(std::log(std::max(amp, 1e-300)));
        }
    }
    return {fit_slope(ts, la), std::sqrt(std::fabs(K) * std::fabs(xi) / 2.0), N};
}

}  // namespace

GrowthMeasurement measure_growth(double K, double xi, double t_max, Integrator integrator,
                                 int grid_points, double amplitude) {
    if (K == 0.0) {
        // P_tt = 0: no growth at all
        return {0.0, 0.0, integrator == Integrator::FiniteDifference ? grid_points : 0};
    }
    if (integrator == Integrator::ExactMode) return measure_exact(K, xi, t_max, amplitude);
    return measure_fd(K, xi, t_max, grid_points, amplitude);
}

}  // namespace pgd::dispersion
