#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "berge/errors.hpp"

namespace berge {

enum class Axis { X, Y };

enum class UnaryOp { Neg, Exp, Log, Abs, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow, Min, Max };

/// Immutable arithmetic expression tree over two variable axes.
///
/// Surface syntax uses 1-based variable names x1..xn, y1..ym; the tree stores
/// 0-based indices. Construct through the factories, which enforce arity.
struct Expr {
    enum class Kind { Constant, Variable, Unary, Binary };

    Kind kind = Kind::Constant;
    double value = 0.0;             // Constant
    Axis axis = Axis::X;            // Variable
    std::size_t index = 0;          // Variable, 0-based
    UnaryOp uop = UnaryOp::Neg;     // Unary
    BinaryOp bop = BinaryOp::Add;   // Binary
    std::vector<Expr> children;

    static Expr constant(double v);
    static Expr variable(Axis axis, std::size_t index);
    static Expr unary(UnaryOp op, Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    bool operator==(const Expr&) const = default;
};

/// Parses expression text against declared axis dimensions.
///
/// Precedence: ^ binds tighter than unary -, which binds tighter than * and /,
/// which bind tighter than + and -. ^ associates to the right. min and max are
/// two-argument functions. "inf" is the +infinity constant.
///
/// Throws SyntaxError (with position) or DimensionError.
Expr parse(std::string_view text, std::size_t x_dim, std::size_t y_dim);

/// Renders with minimal parentheses; parse(render(e), ...) == e structurally.
std::string render(const Expr& e);

/// Evaluates to an extended real. Throws DomainError on undefined operations
/// and DimensionError if a variable index exceeds the supplied vector.
double eval(const Expr& e, std::span<const double> x, std::span<const double> y);

}  // namespace berge
