#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pgd/fieldexpr.hpp"

namespace pgd {

enum class Side { Minus, Plus };
enum class Topology { Open, Periodic };

struct InadmissibleScenario : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One-sided smooth fields with cached symbolic derivatives of the velocity.
struct SideFields {
    FieldExpr rho, u, v;
    FieldExpr u_a, u_b, v_a, v_b;  // filled by InitialData::prepare

    void prepare() {
        u_a = u.derivative("a");
        u_b = u.derivative("b");
        v_a = v.derivative("a");
        v_b = v.derivative("b");
    }
};

struct SideState {
    double rho, u, v;
};

/// Discontinuity curve (A(l), B(l)) with level set G; minus side is {G < 0}.
struct Curve {
    FieldExpr A, B;      // expressions in the single variable l
    FieldExpr A_l, B_l;  // filled by prepare
    double l_min = 0.0, l_max = 1.0;
    Topology topology = Topology::Open;

    void prepare() {
        A_l = A.derivative("l");
        B_l = B.derivative("l");
    }
    std::array<double, 2> point(double l) const { return {A.eval(l), B.eval(l)}; }
    std::array<double, 2> tangent(double l) const { return {A_l.eval(l), B_l.eval(l)}; }
};

struct ConditionViolation {
    double l;
    double s_minus, s_plus;  // A_l v - B_l u per side; admissible iff s_minus<0<s_plus
};

/// Piecewise initial data across one discontinuity curve. One-sided fields
/// are globally defined smooth extensions, so either side can be queried at
/// any point regardless of the sign of G there.
class InitialData {
public:
    SideFields minus, plus;
    FieldExpr level_set;  // G(a,b)
    Curve curve;
    // Galilean shift applied to velocities in the admissibility check only
    double frame_shift_u = 0.0, frame_shift_v = 0.0;

    void prepare();

    const SideFields& side(Side s) const { return s == Side::Minus ? minus : plus; }
    SideState eval_side(Side s, double a, double b) const;

    /// Condition II sampled on a uniform l-grid; empty report means admissible.
    std::vector<ConditionViolation> check_condition_II(int n_samples = 512) const;

    /// Structural invariants: rho > 0, G(A(l),B(l)) = 0, regular parametrization.
    /// Throws InadmissibleScenario on failure.
    void validate(int n_samples = 512) const;

    /// max |u_b - v_a| over a sample grid; zero for potential (gradient) data.
    double curl_defect(double a0, double a1, double b0, double b1, int n = 16) const;
};

}  // namespace pgd
