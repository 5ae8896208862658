#include "gfde/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "gfde/error.hpp"

namespace gfde {

enum class Fn { Sin, Cos, Sinh, Cosh, Exp, Ln, Sqrt, Abs };

struct Expr::Node {
    enum class Kind { Number, Pi, E, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double value = 0.0;
    Fn fn = Fn::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

struct Builtin {
    std::string_view name;
    Fn fn;
};

constexpr Builtin kBuiltins[] = {
    {"sin", Fn::Sin},   {"cos", Fn::Cos}, {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
    {"exp", Fn::Exp},   {"ln", Fn::Ln},   {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs},
};

std::string_view fn_name(Fn fn) {
    for (const auto& b : kBuiltins) {
        if (b.fn == fn) return b.name;
    }
    return "?";
}

NodePtr make_leaf(Kind kind, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->value = value;
    return n;
}

NodePtr make_node(Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(Fn fn, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->fn = fn;
    n->lhs = std::move(arg);
    return n;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ == src_.size()) throw ParseError(pos_, "unexpected end of input");
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ != src_.size()) {
            if (src_[pos_] == ')') throw ParseError(pos_, "unbalanced parenthesis");
            throw ParseError(pos_, std::string("unexpected token '") + src_[pos_] + "'");
        }
        return root;
    }

private:
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

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Kind::Add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_node(Kind::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Kind::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_node(Kind::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_node(Kind::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    // The exponent is parsed as a unary so that `2^-t` and `a^b^c` work.
    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make_node(Kind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ == src_.size()) throw ParseError(pos_, "unexpected end of input");
        const char ch = src_[pos_];
        if (ch == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!accept(')')) throw ParseError(pos_, "unbalanced parenthesis");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return parse_identifier();
        if (ch == ')') throw ParseError(pos_, "unbalanced parenthesis");
        throw ParseError(pos_, std::string("unexpected token '") + ch + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError(start, "malformed number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;  // `2e` is the number 2 followed by `e`
        }
        const std::string text(src_.substr(start, pos_ - start));
        const double v = std::strtod(text.c_str(), nullptr);
        if (!std::isfinite(v)) throw ParseError(start, "numeric literal out of range");
        return make_leaf(Kind::Number, v);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view id = src_.substr(start, pos_ - start);
        if (id == "t") return make_leaf(Kind::Var);
        if (id == "pi") return make_leaf(Kind::Pi);
        if (id == "e") return make_leaf(Kind::E);
        for (const auto& b : kBuiltins) {
            if (b.name == id) {
                if (!accept('(')) throw ParseError(pos_, "expected '(' after " + std::string(id));
                NodePtr arg = parse_sum();
                if (!accept(')')) throw ParseError(pos_, "unbalanced parenthesis");
                return make_call(b.fn, arg);
            }
        }
        throw ParseError(start, "unknown identifier '" + std::string(id) + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

void print(const Node& n, std::string& out) {
    switch (n.kind) {
        case Kind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Kind::Pi: out += "pi"; return;
        case Kind::E: out += "e"; return;
        case Kind::Var: out += "t"; return;
        case Kind::Neg:
            out += "(-";
            print(*n.lhs, out);
            out += ')';
            return;
        case Kind::Call:
            out += fn_name(n.fn);
            out += '(';
            print(*n.lhs, out);
            out += ')';
            return;
        default: break;
    }
    char op = '?';
    switch (n.kind) {
        case Kind::Add: op = '+'; break;
        case Kind::Sub: op = '-'; break;
        case Kind::Mul: op = '*'; break;
        case Kind::Div: op = '/'; break;
        case Kind::Pow: op = '^'; break;
        default: break;
    }
    out += '(';
    print(*n.lhs, out);
    out += op;
    print(*n.rhs, out);
    out += ')';
}

std::string render(const Node& n) {
    std::string s;
    print(n, s);
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation

// Integer literal exponents (optionally negated) are evaluated by repeated
// multiplication so negative bases work for t^N.
std::optional<long> integer_exponent(const Node& n) {
    constexpr double kMaxExponent = 4096.0;
    const Node* lit = &n;
    long sign = 1;
    if (n.kind == Kind::Neg) {
        lit = n.lhs.get();
        sign = -1;
    }
    if (lit->kind != Kind::Number) return std::nullopt;
    const double v = lit->value;
    if (v != std::floor(v) || v > kMaxExponent) return std::nullopt;
    return sign * static_cast<long>(v);
}

template <class T>
T integer_power(const Node& n, T base, long exponent) {
    T acc = T(1);
    const long m = exponent < 0 ? -exponent : exponent;
    for (long i = 0; i < m; ++i) acc *= base;
    if (exponent < 0) {
        if (acc == T(0)) throw EvalError("division by zero in " + render(n));
        acc = T(1) / acc;
    }
    return acc;
}

bool finite(double v) { return std::isfinite(v); }
bool finite(complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

std::string show(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string show(complex v) { return "(" + show(v.real()) + "," + show(v.imag()) + ")"; }

double apply(const Node& n, Fn fn, double x) {
    switch (fn) {
        case Fn::Sin: return std::sin(x);
        case Fn::Cos: return std::cos(x);
        case Fn::Sinh: return std::sinh(x);
        case Fn::Cosh: return std::cosh(x);
        case Fn::Exp: return std::exp(x);
        case Fn::Ln:
            if (!(x > 0.0)) throw EvalError("ln of non-positive argument " + show(x) + " in " + render(n));
            return std::log(x);
        case Fn::Sqrt:
            if (x < 0.0) throw EvalError("sqrt of negative argument " + show(x) + " in " + render(n));
            return std::sqrt(x);
        case Fn::Abs: return std::abs(x);
    }
    return 0.0;
}

complex apply(const Node& n, Fn fn, complex z) {
    switch (fn) {
        case Fn::Sin: return std::sin(z);
        case Fn::Cos: return std::cos(z);
        case Fn::Sinh: return std::sinh(z);
        case Fn::Cosh: return std::cosh(z);
        case Fn::Exp: return std::exp(z);
        case Fn::Ln:
            if (z == complex(0.0)) throw EvalError("ln at branch point 0 in " + render(n));
            return std::log(z);
        case Fn::Sqrt: return std::sqrt(z);
        case Fn::Abs: throw EvalError("abs is not holomorphic; complex evaluation refused in " + render(n));
    }
    return {};
}

double general_power(const Node& n, double base, double w) {
    if (base > 0.0) return std::pow(base, w);
    if (base == 0.0 && w > 0.0) return 0.0;
    throw EvalError("power with base " + show(base) + " and non-integer exponent " + show(w) + " in " +
                    render(n));
}

complex general_power(const Node& n, complex base, complex w) {
    if (base == complex(0.0)) {
        if (w.real() > 0.0) return complex(0.0);
        throw EvalError("power at branch point 0 in " + render(n));
    }
    // Stay on the real branch for real data so both evaluators agree there.
    if (base.imag() == 0.0 && base.real() > 0.0 && w.imag() == 0.0) return complex(std::pow(base.real(), w.real()));
    return std::exp(w * std::log(base));
}

template <class T>
T evaluate(const Node& n, T t) {
    T v{};
    switch (n.kind) {
        case Kind::Number: return T(n.value);
        case Kind::Pi: return T(std::numbers::pi);
        case Kind::E: return T(std::numbers::e);
        case Kind::Var: return t;
        case Kind::Neg: return -evaluate(*n.lhs, t);
        case Kind::Add: v = evaluate(*n.lhs, t) + evaluate(*n.rhs, t); break;
        case Kind::Sub: v = evaluate(*n.lhs, t) - evaluate(*n.rhs, t); break;
        case Kind::Mul: v = evaluate(*n.lhs, t) * evaluate(*n.rhs, t); break;
        case Kind::Div: {
            const T num = evaluate(*n.lhs, t);
            const T den = evaluate(*n.rhs, t);
            if (den == T(0)) throw EvalError("division by zero in " + render(n));
            v = num / den;
            break;
        }
        case Kind::Pow: {
            const T base = evaluate(*n.lhs, t);
            if (auto m = integer_exponent(*n.rhs)) {
                v = integer_power(n, base, *m);
            } else {
                v = general_power(n, base, evaluate(*n.rhs, t));
            }
            break;
        }
        case Kind::Call: v = apply(n, n.fn, evaluate(*n.lhs, t)); break;
    }
    if (!finite(v)) throw EvalError("overflow (value " + show(v) + ") in " + render(n));
    return v;
}

bool contains_abs(const Node& n) {
    if (n.kind == Kind::Call && n.fn == Fn::Abs) return true;
    return (n.lhs && contains_abs(*n.lhs)) || (n.rhs && contains_abs(*n.rhs));
}

}  // namespace

Expr::Expr() : Expr(parse("0")) {}

Expr Expr::parse(std::string_view src) { return Expr(Parser(src).parse(), std::string(src)); }

double Expr::eval(double t) const {
    if (!std::isfinite(t)) throw EvalError("non-finite argument " + show(t));
    return evaluate(*root_, t);
}

complex Expr::eval(complex z) const {
    if (!finite(z)) throw EvalError("non-finite argument " + show(z));
    return evaluate(*root_, z);
}

std::string Expr::str() const { return render(*root_); }

bool Expr::has_abs() const { return contains_abs(*root_); }

}  // namespace gfde
