#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Every Real carries its own mantissa width. Binary operations produce a
// result at the wider of the two operand precisions, so a computation
// started at N bits stays at N bits without any global state.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

#include "mixweyl/errors.hpp"

namespace mixweyl {

using Bits = mpfr_prec_t;

enum class PrecisionMode { native_float, big_float };

struct PrecisionConfig {
    PrecisionMode mode = PrecisionMode::big_float;
    Bits mantissa_bits = 256;

    /// Mantissa width actually used for arithmetic.
    Bits bits() const { return mode == PrecisionMode::native_float ? 53 : mantissa_bits; }

    /// Throws ModelError when mantissa_bits < 53 in big-float mode.
    void validate() const;

    static PrecisionConfig native() { return {PrecisionMode::native_float, 53}; }
    static PrecisionConfig big(Bits bits) { return {PrecisionMode::big_float, bits}; }

    friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;
};

std::string to_string(PrecisionMode mode);
PrecisionMode parse_precision_mode(std::string_view text);

class Real {
public:
    explicit Real(Bits bits = 53);
    Real(long value, Bits bits);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    static Real from_double(double value, Bits bits);
    static Real from_rational(const mpq_class& value, Bits bits);
    /// Decimal or scientific notation; throws EvaluationError on malformed text.
    static Real from_string(std::string_view text, Bits bits);
    static Real pi(Bits bits);
    /// 2^exponent, exactly.
    static Real power_of_two(long exponent, Bits bits);

    Bits precision() const { return mpfr_get_prec(value_); }
    Real with_precision(Bits bits) const;

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    bool is_integer() const { return mpfr_integer_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
    /// Scientific notation with `digits` significant digits, e.g. "1.25000e-03".
    std::string to_string(int digits = 30) const;
    /// Binary exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
    long binary_exponent() const;

    Real operator-() const;
    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
    friend Real operator+(const Real& lhs, long rhs);
    friend Real operator-(const Real& lhs, long rhs);
    friend Real operator-(long lhs, const Real& rhs);
    friend Real operator*(const Real& lhs, long rhs);
    friend Real operator/(const Real& lhs, long rhs);

    friend bool operator==(const Real& lhs, const Real& rhs) { return mpfr_equal_p(lhs.value_, rhs.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& lhs, const Real& rhs);
    friend bool operator==(const Real& lhs, long rhs) { return mpfr_cmp_si(lhs.value_, rhs) == 0; }
    friend std::partial_ordering operator<=>(const Real& lhs, long rhs);

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

private:
    mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);  // throws EvaluationError for x < 0
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real exp(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real hypot(const Real& x, const Real& y);
Real min(const Real& x, const Real& y);
Real max(const Real& x, const Real& y);

/// Complex number with Real parts.
class Scalar {
public:
    Scalar() = default;
    Scalar(Real re, Real im);
    explicit Scalar(Real re);

    static Scalar from_longs(long re, long im, Bits bits);
    static Scalar zero(Bits bits) { return from_longs(0, 0, bits); }
    static Scalar one(Bits bits) { return from_longs(1, 0, bits); }
    static Scalar i(Bits bits) { return from_longs(0, 1, bits); }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Bits precision() const;
    Scalar with_precision(Bits bits) const;

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    Scalar conj() const { return {re_, -im_}; }
    Real abs() const { return hypot(re_, im_); }
    Real norm() const { return re_ * re_ + im_ * im_; }
    std::string to_string(int digits = 30) const;

    Scalar operator-() const { return {-re_, -im_}; }
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    /// Throws DivisionByZero when |rhs| = 0.
    Scalar& operator/=(const Scalar& rhs);
    Scalar& operator*=(const Real& rhs);
    Scalar& operator/=(const Real& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
    friend Scalar operator*(Scalar lhs, const Real& rhs) { return lhs *= rhs; }
    friend Scalar operator*(const Real& lhs, Scalar rhs) { return rhs *= lhs; }
    friend Scalar operator/(Scalar lhs, const Real& rhs) { return lhs /= rhs; }
    friend Scalar operator+(Scalar lhs, const Real& rhs);
    friend Scalar operator-(Scalar lhs, const Real& rhs);
    friend Scalar operator-(const Real& lhs, const Scalar& rhs);

    friend bool operator==(const Scalar& lhs, const Scalar& rhs) { return lhs.re_ == rhs.re_ && lhs.im_ == rhs.im_; }

private:
    Real re_;
    Real im_;
};

inline Real abs(const Scalar& z) { return z.abs(); }
inline Scalar operator/(const Real& lhs, const Scalar& rhs) { return Scalar(lhs) / rhs; }
inline Scalar operator+(const Real& lhs, Scalar rhs) { return rhs + lhs; }

/// Signed residual of an identity together with the magnitude of the terms
/// that produced it; relative() is the componentwise relative defect.
struct Defect {
    Scalar value;
    Real scale;

    Real relative() const;
};

/// 2^-(bits - slack): tolerance for identities that hold to rounding.
Real working_tolerance(Bits bits, Bits slack = 8);

/// Throws PrecisionExhausted when `x` is not finite, or, in native-float
/// mode, when it lies outside the range of an IEEE double.
void check_range(const Real& x, const PrecisionConfig& precision, std::string_view what);
void check_range(const Scalar& z, const PrecisionConfig& precision, std::string_view what);

}  // namespace mixweyl
