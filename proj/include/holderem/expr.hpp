#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace holderem {

/// Immutable AST for scalar coefficient expressions in the variable x.
///
/// Grammar (whitespace ignored, no implicit multiplication):
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-' unary | atom
///   atom   := number | 'x' | ident '(' expr ')' | '(' expr ')'
/// with ident one of sin cos tan exp log abs sqrt arctan. '^' is right
/// associative and binds tighter than unary minus on its right operand only,
/// so -2^2 parses as (-2)^2.
class Expr {
public:
    enum class Kind { number, variable, negate, add, subtract, multiply, divide, power, call };
    enum class Function { sin, cos, tan, exp, log, abs, sqrt, arctan };

    static Expr number(double value);
    static Expr variable();
    static Expr negate(Expr operand);
    static Expr binary(Kind kind, Expr lhs, Expr rhs);
    static Expr call(Function fn, Expr argument);

    Kind kind() const noexcept;
    double number_value() const noexcept;
    Function function() const noexcept;
    /// Operand of negate/call, left operand of a binary node.
    const Expr& lhs() const;
    const Expr& rhs() const;

    /// Plain IEEE evaluation; may return NaN or infinity.
    double evaluate(double x) const;

    /// Structural rendering, e.g. Mul(Neg(sin(x)), Pow(cos(x), 3)).
    std::string to_string() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Throws ParseError carrying the byte offset of the offending input.
Expr parse(std::string_view source);

/// evaluate() that throws EvalError when the result is not finite.
double eval(const Expr& e, double x);

std::string_view function_name(Expr::Function fn) noexcept;

} // namespace holderem
