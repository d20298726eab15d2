#pragma once

// Coefficient expression language.
//
//   expr   = term {("+"|"-") term}
//   term   = factor {("*"|"/") factor}
//   factor = ["-"] power
//   power  = atom ["^" factor]
//   atom   = number | "t" | "(" expr ")" | "sqrt" "(" expr ")"
//
// "^" is right-associative and binds tighter than unary minus, so "-4^t"
// is -(4^t) and "2^-t" is 2^(-t).

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

#include "mixweyl/real.hpp"

namespace mixweyl {

enum class ExprKind { number, variable, negate, add, subtract, multiply, divide, power, sqrt };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind = ExprKind::number;
    mpq_class value;      // number: exact value of the literal
    std::string literal;  // number: literal as written
    ExprPtr lhs;          // unary operand or left operand
    ExprPtr rhs;
};

class CoefficientExpr {
public:
    /// Throws SyntaxError with the byte offset of the first offending character.
    static CoefficientExpr parse(std::string_view text);
    static CoefficientExpr constant(const mpq_class& value);
    static CoefficientExpr from_node(ExprPtr root);

    const ExprNode& root() const { return *root_; }
    const ExprPtr& root_ptr() const { return root_; }

    /// Canonical text; parse(to_string()) is structurally equal to *this.
    std::string to_string() const;

    /// True for a literal zero, possibly negated or parenthesized.
    bool is_literal_zero() const;

    friend bool operator==(const CoefficientExpr& lhs, const CoefficientExpr& rhs);

private:
    explicit CoefficientExpr(ExprPtr root) : root_(std::move(root)) {}
    ExprPtr root_;
};

bool structurally_equal(const ExprNode& lhs, const ExprNode& rhs);

/// Value at integer t. Throws EvaluationError for sqrt of a negative value or a
/// non-integer power of a negative base, DivisionByZero for a zero divisor and
/// PrecisionExhausted when the value leaves the representable range.
Real eval_coefficient(const CoefficientExpr& expr, long t, const PrecisionConfig& precision);

}  // namespace mixweyl
