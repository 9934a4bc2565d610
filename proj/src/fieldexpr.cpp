#include "pgd/fieldexpr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace pgd {

namespace {
enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Exp, Sqrt, Abs, Log };

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Sqrt: return "sqrt";
        case Func::Abs: return "abs";
        case Func::Log: return "log";
    }
    return "?";
}
}  // namespace

struct FieldExpr::Node {
    Kind kind;
    double value = 0.0;   // Const
    int var = 0;          // Var index
    Func func = Func::Sin;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const FieldExpr::Node>;

NodePtr make_const(double v) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->kind = Kind::Const;
    n->value = v;
    return n;
}

NodePtr make_var(int idx) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->kind = Kind::Var;
    n->var = idx;
    return n;
}

NodePtr make_unary(Kind k, NodePtr child) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->kind = k;
    n->lhs = std::move(child);
    return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_call(Func f, NodePtr arg) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->kind = Kind::Call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& vars)
        : src_(src), vars_(vars) {}

    NodePtr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view src_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(Kind::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = make_binary(Kind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(Kind::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = make_binary(Kind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_unary(Kind::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_atom();
        if (accept('^')) {
            // right-associative; unary minus allowed in the exponent
            return make_binary(Kind::Pow, base, parse_unary());
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        std::size_t start = pos_;
        double v = 0.0;
        auto* first = src_.data() + pos_;
        auto* last = src_.data() + src_.size();
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{}) throw ParseError("malformed number", start);
        pos_ = static_cast<std::size_t>(res.ptr - src_.data());
        return make_const(v);
    }

    NodePtr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        if (peek() == '(') {
            Func f;
            if (name == "sin") f = Func::Sin;
            else if (name == "cos") f = Func::Cos;
            else if (name == "exp") f = Func::Exp;
            else if (name == "sqrt") f = Func::Sqrt;
            else if (name == "abs") f = Func::Abs;
            else if (name == "log") f = Func::Log;
            else throw ParseError("unknown function '" + name + "'", start);
            accept('(');
            auto arg = parse_expr();
            if (!accept(')')) throw ParseError("expected ')' after function argument", pos_);
            return make_call(f, arg);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return make_var(static_cast<int>(i));
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

double eval_node(const FieldExpr::Node& n, double a, double b) {
    switch (n.kind) {
        case Kind::Const: return n.value;
        case Kind::Var: return n.var == 0 ? a : b;
        case Kind::Neg: return -eval_node(*n.lhs, a, b);
        case Kind::Add: return eval_node(*n.lhs, a, b) + eval_node(*n.rhs, a, b);
        case Kind::Sub: return eval_node(*n.lhs, a, b) - eval_node(*n.rhs, a, b);
        case Kind::Mul: return eval_node(*n.lhs, a, b) * eval_node(*n.rhs, a, b);
        case Kind::Div: {
            double den = eval_node(*n.rhs, a, b);
            if (den == 0.0) throw DomainError("division by zero");
            return eval_node(*n.lhs, a, b) / den;
        }
        case Kind::Pow: {
            double base = eval_node(*n.lhs, a, b);
            double expo = eval_node(*n.rhs, a, b);
            double r = std::pow(base, expo);
            if (!std::isfinite(r)) throw DomainError("pow out of real domain");
            return r;
        }
        case Kind::Call: {
            double x = eval_node(*n.lhs, a, b);
            switch (n.func) {
                case Func::Sin: return std::sin(x);
                case Func::Cos: return std::cos(x);
                case Func::Exp: {
                    double r = std::exp(x);
                    if (!std::isfinite(r)) throw DomainError("exp overflow");
                    return r;
                }
                case Func::Sqrt:
                    if (x < 0.0) throw DomainError("sqrt of negative value");
                    return std::sqrt(x);
                case Func::Abs: return std::fabs(x);
                case Func::Log:
                    if (x <= 0.0) throw DomainError("log of nonpositive value");
                    return std::log(x);
            }
            throw DomainError("bad function node");
        }
    }
    throw DomainError("bad expression node");
}

NodePtr diff_node(const NodePtr& n, int var);

NodePtr diff_call(const NodePtr& n, int var) {
    const auto& arg = n->lhs;
    auto darg = diff_node(arg, var);
    switch (n->func) {
        case Func::Sin: return make_binary(Kind::Mul, make_call(Func::Cos, arg), darg);
        case Func::Cos:
            return make_binary(Kind::Mul,
                               make_unary(Kind::Neg, make_call(Func::Sin, arg)), darg);
        case Func::Exp: return make_binary(Kind::Mul, make_call(Func::Exp, arg), darg);
        case Func::Sqrt:
            // u' / (2 sqrt(u))
            return make_binary(Kind::Div, darg,
                               make_binary(Kind::Mul, make_const(2.0), make_call(Func::Sqrt, arg)));
        case Func::Log: return make_binary(Kind::Div, darg, arg);
        case Func::Abs:
            throw NonDifferentiableError("abs is not differentiable");
    }
    throw NonDifferentiableError("bad function node");
}

NodePtr diff_node(const NodePtr& n, int var) {
    switch (n->kind) {
        case Kind::Const: return make_const(0.0);
        case Kind::Var: return make_const(n->var == var ? 1.0 : 0.0);
        case Kind::Neg: return make_unary(Kind::Neg, diff_node(n->lhs, var));
        case Kind::Add: return make_binary(Kind::Add, diff_node(n->lhs, var), diff_node(n->rhs, var));
        case Kind::Sub: return make_binary(Kind::Sub, diff_node(n->lhs, var), diff_node(n->rhs, var));
        case Kind::Mul:
            return make_binary(Kind::Add,
                               make_binary(Kind::Mul, diff_node(n->lhs, var), n->rhs),
                               make_binary(Kind::Mul, n->lhs, diff_node(n->rhs, var)));
        case Kind::Div:
            // (u'v - uv') / v^2
            return make_binary(
                Kind::Div,
                make_binary(Kind::Sub,
                            make_binary(Kind::Mul, diff_node(n->lhs, var), n->rhs),
                            make_binary(Kind::Mul, n->lhs, diff_node(n->rhs, var))),
                make_binary(Kind::Pow, n->rhs, make_const(2.0)));
        case Kind::Pow: {
            if (n->rhs->kind == Kind::Const) {
                double c = n->rhs->value;
                // c * u^(c-1) * u'
                return make_binary(
                    Kind::Mul, make_const(c),
                    make_binary(Kind::Mul,
                                make_binary(Kind::Pow, n->lhs, make_const(c - 1.0)),
                                diff_node(n->lhs, var)));
            }
            // u^v * (v' log u + v u'/u)
            return make_binary(
                Kind::Mul, make_binary(Kind::Pow, n->lhs, n->rhs),
                make_binary(Kind::Add,
                            make_binary(Kind::Mul, diff_node(n->rhs, var),
                                        make_call(Func::Log, n->lhs)),
                            make_binary(Kind::Mul, n->rhs,
                                        make_binary(Kind::Div, diff_node(n->lhs, var), n->lhs))));
        }
        case Kind::Call: return diff_call(n, var);
    }
    throw NonDifferentiableError("bad expression node");
}

void render(const FieldExpr::Node& n, const std::vector<std::string>& vars, std::string& out) {
    switch (n.kind) {
        case Kind::Const: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            if (n.value < 0.0) {
                out += '(';
                out += buf;
                out += ')';
            } else {
                out += buf;
            }
            return;
        }
        case Kind::Var: out += vars[static_cast<std::size_t>(n.var)]; return;
        case Kind::Neg:
            out += "(-";
            render(*n.lhs, vars, out);
            out += ')';
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow: {
            char op = n.kind == Kind::Add ? '+'
                    : n.kind == Kind::Sub ? '-'
                    : n.kind == Kind::Mul ? '*'
                    : n.kind == Kind::Div ? '/' : '^';
            out += '(';
            render(*n.lhs, vars, out);
            out += op;
            render(*n.rhs, vars, out);
            out += ')';
            return;
        }
        case Kind::Call:
            out += func_name(n.func);
            out += '(';
            render(*n.lhs, vars, out);
            out += ')';
            return;
    }
}

}  // namespace

FieldExpr::FieldExpr() : root_(make_const(0.0)), vars_{"a", "b"} {}

FieldExpr::FieldExpr(std::shared_ptr<const Node> root, std::vector<std::string> vars)
    : root_(std::move(root)), vars_(std::move(vars)) {}

FieldExpr FieldExpr::parse(std::string_view source, const std::vector<std::string>& variables) {
    Parser p(source, variables);
    return FieldExpr(p.run(), variables);
}

FieldExpr FieldExpr::constant(double value) {
    return FieldExpr(make_const(value), {"a", "b"});
}

double FieldExpr::eval(double a, double b) const {
    double r = eval_node(*root_, a, b);
    if (!std::isfinite(r)) throw DomainError("expression evaluated to a non-finite value");
    return r;
}

FieldExpr FieldExpr::derivative(const std::string& variable) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == variable)
            return FieldExpr(diff_node(root_, static_cast<int>(i)), vars_);
    throw std::invalid_argument("derivative: unknown variable '" + variable + "'");
}

std::string FieldExpr::str() const {
    std::string out;
    render(*root_, vars_, out);
    return out;
}

}  // namespace pgd
