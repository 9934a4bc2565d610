#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgd {

// Thrown by FieldExpr::parse with the byte offset of the offending token.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Evaluation left the real domain (division by zero, sqrt of a negative, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// differentiate() met a node without a derivative (abs).
struct NonDifferentiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Immutable expression tree in up to two named variables.
///
/// Grammar: infix + - * / ^ with standard precedence, ^ right-associative,
/// unary minus, parentheses, functions sin cos exp sqrt abs log, decimal
/// literals. Variable names are fixed at parse time (default "a", "b").
/// Evaluation either returns a finite value or throws DomainError; NaN is
/// never propagated silently. Safe for concurrent evaluation.
class FieldExpr {
public:
    FieldExpr();  // constant zero

    static FieldExpr parse(std::string_view source,
                           const std::vector<std::string>& variables = {"a", "b"});
    static FieldExpr constant(double value);

    double eval(double a, double b = 0.0) const;
    double operator()(double a, double b = 0.0) const { return eval(a, b); }

    /// Symbolic derivative with respect to one of the declared variables.
    FieldExpr derivative(const std::string& variable) const;

    /// Render to text that parses back to the same evaluation semantics.
    std::string str() const;

    const std::vector<std::string>& variables() const { return vars_; }

    struct Node;

private:
    FieldExpr(std::shared_ptr<const Node> root, std::vector<std::string> vars);
    std::shared_ptr<const Node> root_;
    std::vector<std::string> vars_;
};

}  // namespace pgd
