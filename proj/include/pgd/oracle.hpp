#pragma once

#include <vector>

#include "pgd/fieldexpr.hpp"
#include "pgd/front_state.hpp"
#include "pgd/scenario.hpp"

namespace pgd {

struct SupportViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace oracle {

/// Axis-aligned sampling box, in initial coordinates (a,b) for particle
/// seeding and in (x,y) for the weak-form quadrature.
struct Box {
    double x0, x1, y0, y1;
};

struct StickyBin {
    double l;
    double mass = 0.0, mom_u = 0.0, mom_v = 0.0;
};

struct StickyResult {
    std::vector<StickyBin> bins;  // one per marker of the tracked front
    double free_mass = 0.0, free_mom_u = 0.0, free_mom_v = 0.0;
    double initial_mass = 0.0, initial_mom_u = 0.0, initial_mom_v = 0.0;

    double absorbed_mass() const {
        double s = 0.0;
        for (const auto& b : bins) s += b.mass;
        return s;
    }
};

/// Brute-force particle surrogate: a grid of cells (spacing h) free-streams
/// along characteristics; a particle is absorbed into the nearest front bin
/// the moment its geometric side of the tracked front flips. Bin masses and
/// momenta are directly comparable with P*dl, I*dl, J*dl of the tracker.
/// Bins start preloaded with the front's initial (P, I, J) so scenarios with
/// nonzero initial front data remain comparable. Mass and momentum are
/// conserved exactly by bookkeeping.
StickyResult sticky_run(const InitialData& data, const FrontHistory& history, double h,
                        double dt, double t_max, const Box& seed_box);

struct WeakResidual {
    double mass = 0.0;   // defect of the mass identity
    double mom_u = 0.0;  // defect of the x-momentum identity
    double mom_v = 0.0;  // defect of the y-momentum identity
};

/// Signed defects of the three weak conservation identities between times t1
/// and t2, for C^1 test functions f (mass), g (x-momentum), h (y-momentum)
/// compactly supported in box. The absolutely continuous parts integrate in
/// Lagrangian coordinates (2x2 Gauss-Legendre per cell, survival decided per
/// node by its front-crossing time); the singular parts integrate along the
/// marker chain (trapezoid in l); the outer time integral is a trapezoid.
/// Throws SupportViolation if a test function is not negligible on the box
/// boundary ring.
WeakResidual weak_residual(const InitialData& data, const FrontHistory& history,
                           const FieldExpr& f, const FieldExpr& g, const FieldExpr& h,
                           double t1, double t2, const Box& box, int n_cells = 64,
                           int n_tau = 64);

}  // namespace oracle
}  // namespace pgd
