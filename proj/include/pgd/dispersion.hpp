#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace pgd {

struct BlowUp : std::runtime_error {
    BlowUp(const std::string& msg, double when) : std::runtime_error(msg), t(when) {}
    double t;
};

namespace dispersion {

/// One root pair of the mode ansatz for P_tt = K P_x: frequency sigma and
/// damping/growth Delta (growth when Delta < 0).
struct Root {
    double sigma;
    double delta;
};

/// Both roots of lambda^2 = -K i xi; the first entry is the growing branch
/// with delta = -sqrt(|K xi| / 2).
std::array<Root, 2> dispersion_roots(double K, double xi);

enum class Integrator { ExactMode, FiniteDifference };

struct GrowthMeasurement {
    double rate;           // fitted log-amplitude slope over [t_max/2, t_max]
    double predicted;      // sqrt(|K| |xi| / 2)
    int grid_points;       // finite-difference resolution (0 for exact mode)
};

/// Evolves a single small-amplitude mode and fits its growth rate. The
/// finite-difference path (centered space, leapfrog time) has no
/// mesh-independent limit; its measured rate climbing with resolution is the
/// ill-posedness demonstration. Overflow is reported as BlowUp with the
/// overflow time.
GrowthMeasurement measure_growth(double K, double xi, double t_max, Integrator integrator,
                                 int grid_points = 256, double amplitude = 1e-8);

}  // namespace dispersion
}  // namespace pgd
