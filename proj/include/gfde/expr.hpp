#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>

namespace gfde {

using complex = std::complex<double>;

/// Closed-form expression in the single variable `t`.
///
/// Grammar: infix `+ - * / ^`, unary minus, parentheses, decimal and
/// scientific literals, constants `pi` and `e`, and the functions
/// sin, cos, sinh, cosh, exp, ln, sqrt, abs. `^` binds tighter than unary
/// minus and is right-associative.
///
/// Expr is an immutable handle; copies share the tree.
class Expr {
public:
    struct Node;

    /// The constant 0.
    Expr();

    /// Parses `src`. Throws ParseError carrying the 0-based offset.
    static Expr parse(std::string_view src);

    /// Real evaluation. Throws EvalError on domain violations (ln of a
    /// non-positive number, division by zero, ...) and on non-finite results.
    double eval(double t) const;

    /// Complex evaluation with principal branches. Throws EvalError for
    /// `abs` nodes and for branch points (ln 0, 0^w with Re w <= 0).
    complex eval(complex z) const;

    /// Deterministic fully parenthesized rendering; parse(str()) yields an
    /// expression that evaluates identically.
    std::string str() const;

    /// The text this expression was parsed from.
    const std::string& source() const { return *source_; }

    /// True if the tree contains an `abs` node.
    bool has_abs() const;

    const Node& root() const { return *root_; }

private:
    Expr(std::shared_ptr<const Node> root, std::string source)
        : root_(std::move(root)), source_(std::make_shared<const std::string>(std::move(source))) {}

    std::shared_ptr<const Node> root_;
    std::shared_ptr<const std::string> source_;
};

}  // namespace gfde
