#include "pgd/presets.hpp"

#include <cctype>

namespace pgd::presets {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return v < 0.0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

// Rename the standalone identifier `a` to `l` for use in curve expressions.
std::string a_to_l(const std::string& src) {
    std::string out;
    for (std::size_t i = 0; i < src.size(); ++i) {
        bool prev_word = i > 0 && (std::isalnum(static_cast<unsigned char>(src[i - 1])) ||
                                   src[i - 1] == '_');
        bool next_word = i + 1 < src.size() &&
                         (std::isalnum(static_cast<unsigned char>(src[i + 1])) ||
                          src[i + 1] == '_');
        if (src[i] == 'a' && !prev_word && !next_word)
            out += 'l';
        else
            out += src[i];
    }
    return out;
}

}  // namespace

InitialData symmetric_riemann(double rho, double w, double l_min, double l_max) {
    InitialData d;
    d.minus.rho = FieldExpr::parse(num(rho));
    d.minus.u = FieldExpr::constant(0.0);
    d.minus.v = FieldExpr::parse(num(-w));
    d.plus.rho = FieldExpr::parse(num(rho));
    d.plus.u = FieldExpr::constant(0.0);
    d.plus.v = FieldExpr::parse(num(w));
    d.level_set = FieldExpr::parse("0-b");
    d.curve.A = FieldExpr::parse("l", {"l"});
    d.curve.B = FieldExpr::parse("0", {"l"});
    d.curve.l_min = l_min;
    d.curve.l_max = l_max;
    d.prepare();
    return d;
}

InitialData constant_state(double rho_minus, double rho_plus, double u, double v, double l_min,
                           double l_max) {
    InitialData d;
    d.minus.rho = FieldExpr::parse(num(rho_minus));
    d.minus.u = FieldExpr::parse(num(u));
    d.minus.v = FieldExpr::parse(num(v));
    d.plus.rho = FieldExpr::parse(num(rho_plus));
    d.plus.u = FieldExpr::constant(0.0);
    d.plus.v = FieldExpr::constant(0.0);
    d.level_set = FieldExpr::parse("0-b");
    d.curve.A = FieldExpr::parse("l", {"l"});
    d.curve.B = FieldExpr::parse("0", {"l"});
    d.curve.l_min = l_min;
    d.curve.l_max = l_max;
    d.frame_shift_u = -0.5 * u;
    d.frame_shift_v = -0.5 * v;
    d.prepare();
    return d;
}

InitialFrontLoad constant_state_load(double P0, double k_hat0, double u, double v) {
    InitialFrontLoad load;
    load.P0 = FieldExpr::parse(num(P0), {"l"});
    load.I0 = FieldExpr::parse(num(k_hat0 * P0 * u), {"l"});
    load.J0 = FieldExpr::parse(num(k_hat0 * P0 * v), {"l"});
    return load;
}

InitialData potential_perturbation(const std::string& f_of_a, double eps, double l_min,
                                   double l_max) {
    InitialData d;
    const std::string s0 = "b+" + num(eps) + "*(" + f_of_a + ")";
    FieldExpr S0 = FieldExpr::parse(s0);
    d.minus.rho = FieldExpr::constant(1.0);
    d.minus.u = FieldExpr::constant(0.0);
    d.minus.v = FieldExpr::constant(0.0);
    d.plus.rho = FieldExpr::constant(1.0);
    d.plus.u = S0.derivative("a");
    d.plus.v = S0.derivative("b");
    d.level_set = FieldExpr::parse("0-(" + s0 + ")");
    d.curve.A = FieldExpr::parse("l", {"l"});
    d.curve.B = FieldExpr::parse("0-" + num(eps) + "*(" + a_to_l(f_of_a) + ")", {"l"});
    d.curve.l_min = l_min;
    d.curve.l_max = l_max;
    d.frame_shift_v = -0.5;
    d.prepare();
    return d;
}

InitialData no_jump(const std::string& rho, const std::string& u, const std::string& v,
                    double l_min, double l_max) {
    InitialData d;
    d.minus.rho = d.plus.rho = FieldExpr::parse(rho);
    d.minus.u = d.plus.u = FieldExpr::parse(u);
    d.minus.v = d.plus.v = FieldExpr::parse(v);
    d.level_set = FieldExpr::parse("0-b");
    d.curve.A = FieldExpr::parse("l", {"l"});
    d.curve.B = FieldExpr::parse("0", {"l"});
    d.curve.l_min = l_min;
    d.curve.l_max = l_max;
    d.prepare();
    return d;
}

}  // namespace pgd::presets
