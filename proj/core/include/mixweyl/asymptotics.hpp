#pragma once

// Exact exponential-polynomial normal forms  f(t) = sum_i c_i * b_i^t * t^k_i
// with rational c_i, rational b_i > 0 and integer k_i >= 0, optionally wrapped
// as s * sqrt(f). Growth comparisons and series tests on these forms are exact.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "mixweyl/expr.hpp"
#include "mixweyl/real.hpp"

namespace mixweyl {

struct ExpTerm {
    mpq_class coeff;
    mpq_class base;  // > 0
    unsigned degree = 0;

    friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

class ExpPoly {
public:
    ExpPoly() = default;
    static ExpPoly constant(const mpq_class& value);
    static ExpPoly variable();
    static ExpPoly term(const mpq_class& coeff, const mpq_class& base, unsigned degree);

    /// Terms ordered from fastest to slowest growth, like terms merged, zeros dropped.
    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_single_term() const { return terms_.size() == 1; }
    /// Present when every term has base 1 and degree 0.
    std::optional<mpq_class> constant_value() const;
    /// Fastest-growing term; requires !is_zero().
    const ExpTerm& dominant() const { return terms_.front(); }

    ExpPoly operator-() const;
    friend ExpPoly operator+(const ExpPoly& lhs, const ExpPoly& rhs);
    friend ExpPoly operator-(const ExpPoly& lhs, const ExpPoly& rhs);
    friend ExpPoly operator*(const ExpPoly& lhs, const ExpPoly& rhs);
    ExpPoly pow(unsigned exponent) const;
    /// g(t) = f(t - k).
    ExpPoly shift(long k) const;

    Real evaluate(long t, Bits bits) const;
    std::string to_string() const;

    friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

private:
    void normalize();
    std::vector<ExpTerm> terms_;
};

/// Magnitude scale  base^(t/root) * t^degree  of a recognized sequence.
struct Rate {
    mpq_class base = 1;  // > 0
    long root = 1;       // > 0
    mpq_class degree = 0;

    static Rate one() { return {}; }
    Rate reciprocal() const;
    Rate nth_root(long n) const;
    friend Rate operator*(const Rate& lhs, const Rate& rhs);
    friend Rate operator/(const Rate& lhs, const Rate& rhs) { return lhs * rhs.reciprocal(); }
    std::string to_string() const;
};

/// Negative, zero or positive as lhs grows slower than, like, or faster than rhs.
int compare(const Rate& lhs, const Rate& rhs);

/// Sum over t of a positive sequence with this rate diverges.
bool series_diverges(const Rate& rate);

/// sign * sqrt(inner) when sqrt_wrapped, otherwise inner.
struct GrowthClass {
    ExpPoly inner;
    bool sqrt_wrapped = false;
    int sign = 1;

    bool is_zero() const { return inner.is_zero(); }
    /// Sign of the sequence for all large t; 0 for the zero sequence.
    int eventual_sign() const;
    /// Requires !is_zero().
    Rate rate() const;
    /// The exact square as an exponential polynomial.
    ExpPoly square() const;
    /// Present when not sqrt-wrapped.
    std::optional<ExpPoly> as_poly() const;
    Real evaluate(long t, Bits bits) const;
    std::string to_string() const;
};

std::optional<ExpPoly> to_exp_poly(const ExprNode& node);
std::optional<GrowthClass> asymptotic_class(const CoefficientExpr& expr);

/// Smallest T >= from such that for every t >= T the dominant term of f
/// exceeds the sum of the magnitudes of all other terms by a factor >= 2;
/// nullopt when f is zero or no such T is found below `limit`.
std::optional<long> dominance_onset(const ExpPoly& f, long from, long limit = 1000000);

/// Smallest T >= from with |f(t)| <= eps for all t >= T, for f decaying to 0
/// (every term has base < 1, or base 1 and degree 0 is absent); nullopt otherwise.
std::optional<long> decay_below(const ExpPoly& f, double eps, long from, long limit = 1000000);

/// A T >= from with |f(t)| >= bound for all t >= T, for f whose dominant
/// term grows without bound; nullopt otherwise. T is the first point past the
/// dominance onset where half the dominant term reaches the bound.
std::optional<long> exceeds_from(const ExpPoly& f, double bound, long from, long limit = 1000000);

}  // namespace mixweyl
