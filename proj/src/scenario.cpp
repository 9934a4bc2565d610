#include "pgd/scenario.hpp"

#include <cmath>

namespace pgd {

void InitialData::prepare() {
    minus.prepare();
    plus.prepare();
    curve.prepare();
}

SideState InitialData::eval_side(Side s, double a, double b) const {
    const SideFields& f = side(s);
    return {f.rho.eval(a, b), f.u.eval(a, b), f.v.eval(a, b)};
}

std::vector<ConditionViolation> InitialData::check_condition_II(int n_samples) const {
    std::vector<ConditionViolation> report;
    for (int i = 0; i < n_samples; ++i) {
        double l = curve.l_min + (curve.l_max - curve.l_min) * i / (n_samples - 1.0);
        auto [a, b] = curve.point(l);
        auto [al, bl] = curve.tangent(l);
        double um = minus.u.eval(a, b) + frame_shift_u;
        double vm = minus.v.eval(a, b) + frame_shift_v;
        double up = plus.u.eval(a, b) + frame_shift_u;
        double vp = plus.v.eval(a, b) + frame_shift_v;
        double sm = al * vm - bl * um;
        double sp = al * vp - bl * up;
        if (!(sm < 0.0) || !(sp > 0.0)) report.push_back({l, sm, sp});
    }
    return report;
}

void InitialData::validate(int n_samples) const {
    for (int i = 0; i < n_samples; ++i) {
        double l = curve.l_min + (curve.l_max - curve.l_min) * i / (n_samples - 1.0);
        auto [a, b] = curve.point(l);
        auto [al, bl] = curve.tangent(l);
        if (al * al + bl * bl == 0.0)
            throw InadmissibleScenario("degenerate curve parametrization at l=" + std::to_string(l));
        if (std::fabs(level_set.eval(a, b)) > 1e-8)
            throw InadmissibleScenario("level set does not vanish on the curve at l=" +
                                       std::to_string(l));
        if (!(minus.rho.eval(a, b) > 0.0) || !(plus.rho.eval(a, b) > 0.0))
            throw InadmissibleScenario("nonpositive initial density at l=" + std::to_string(l));
    }
}

double InitialData::curl_defect(double a0, double a1, double b0, double b1, int n) const {
    double worst = 0.0;
    for (const SideFields* f : {&minus, &plus}) {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                double a = a0 + (a1 - a0) * i / n;
                double b = b0 + (b1 - b0) * j / n;
                worst = std::max(worst, std::fabs(f->u_b.eval(a, b) - f->v_a.eval(a, b)));
            }
        }
    }
    return worst;
}

}  // namespace pgd
