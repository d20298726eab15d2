#include "mixweyl/real.hpp"

#include <climits>
#include <cmath>
#include <cstdlib>
#include <string>

namespace mixweyl {

namespace {

Bits wider(const Real& a, const Real& b) { return a.precision() > b.precision() ? a.precision() : b.precision(); }

// Widen `x` in place so that it can absorb a result at `bits`.
void widen(Real& x, Bits bits)
{
    if (x.precision() < bits) {
        mpfr_prec_round(x.get(), bits, MPFR_RNDN);
    }
}

}  // namespace

void PrecisionConfig::validate() const
{
    if (mode == PrecisionMode::big_float && mantissa_bits < 53) {
        throw ModelError("mantissa_bits must be at least 53, got " + std::to_string(mantissa_bits));
    }
}

std::string to_string(PrecisionMode mode)
{
    return mode == PrecisionMode::native_float ? "native-float" : "big-float";
}

PrecisionMode parse_precision_mode(std::string_view text)
{
    if (text == "native-float") {
        return PrecisionMode::native_float;
    }
    if (text == "big-float") {
        return PrecisionMode::big_float;
    }
    throw ModelError("unknown precision mode '" + std::string(text) + "'");
}

Real::Real(Bits bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(long value, Bits bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other)
{
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_double(double value, Bits bits)
{
    Real r(bits);
    mpfr_set_d(r.value_, value, MPFR_RNDN);
    return r;
}

Real Real::from_rational(const mpq_class& value, Bits bits)
{
    Real r(bits);
    mpfr_set_q(r.value_, value.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::from_string(std::string_view text, Bits bits)
{
    Real r(bits);
    std::string owned(text);
    if (owned.empty() || mpfr_set_str(r.value_, owned.c_str(), 10, MPFR_RNDN) != 0) {
        throw EvaluationError("not a decimal number: '" + owned + "'");
    }
    return r;
}

Real Real::pi(Bits bits)
{
    Real r(bits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

Real Real::power_of_two(long exponent, Bits bits)
{
    Real r(1, bits);
    mpfr_mul_2si(r.value_, r.value_, exponent, MPFR_RNDN);
    return r;
}

Real Real::with_precision(Bits bits) const
{
    Real r(bits);
    mpfr_set(r.value_, value_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const
{
    if (digits < 1) {
        digits = 1;
    }
    char* buffer = nullptr;
    mpfr_asprintf(&buffer, "%.*Re", digits - 1, value_);
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
}

long Real::binary_exponent() const
{
    if (is_zero() || !is_finite()) {
        return LONG_MIN;
    }
    return mpfr_get_exp(value_);
}

Real Real::operator-() const
{
    Real r(precision());
    mpfr_neg(r.value_, value_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& rhs)
{
    widen(*this, rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs)
{
    widen(*this, rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs)
{
    widen(*this, rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs)
{
    if (rhs.is_zero()) {
        throw DivisionByZero("real division by zero");
    }
    widen(*this, rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real operator+(const Real& lhs, long rhs)
{
    Real r(lhs.precision());
    mpfr_add_si(r.value_, lhs.value_, rhs, MPFR_RNDN);
    return r;
}

Real operator-(const Real& lhs, long rhs)
{
    Real r(lhs.precision());
    mpfr_sub_si(r.value_, lhs.value_, rhs, MPFR_RNDN);
    return r;
}

Real operator-(long lhs, const Real& rhs)
{
    Real r(rhs.precision());
    mpfr_si_sub(r.value_, lhs, rhs.value_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& lhs, long rhs)
{
    Real r(lhs.precision());
    mpfr_mul_si(r.value_, lhs.value_, rhs, MPFR_RNDN);
    return r;
}

Real operator/(const Real& lhs, long rhs)
{
    if (rhs == 0) {
        throw DivisionByZero("real division by zero");
    }
    Real r(lhs.precision());
    mpfr_div_si(r.value_, lhs.value_, rhs, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& lhs, const Real& rhs)
{
    if (mpfr_unordered_p(lhs.value_, rhs.value_)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& lhs, long rhs)
{
    if (mpfr_nan_p(lhs.value_)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp_si(lhs.value_, rhs);
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Real abs(const Real& x)
{
    Real r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x)
{
    if (x.sign() < 0) {
        throw EvaluationError("sqrt of negative value " + x.to_string(12));
    }
    Real r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, const Real& exponent)
{
    Real r(wider(base, exponent));
    mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, long exponent)
{
    Real r(base.precision());
    mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
    return r;
}

Real exp(const Real& x)
{
    Real r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x)
{
    Real r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log2(const Real& x)
{
    Real r(x.precision());
    mpfr_log2(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sin(const Real& x)
{
    Real r(x.precision());
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real cos(const Real& x)
{
    Real r(x.precision());
    mpfr_cos(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real hypot(const Real& x, const Real& y)
{
    Real r(wider(x, y));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real min(const Real& x, const Real& y) { return y < x ? y : x; }
Real max(const Real& x, const Real& y) { return x < y ? y : x; }

Scalar::Scalar(Real re, Real im) : re_(std::move(re)), im_(std::move(im))
{
    const Bits bits = re_.precision() > im_.precision() ? re_.precision() : im_.precision();
    widen(re_, bits);
    widen(im_, bits);
}

Scalar::Scalar(Real re) : re_(std::move(re)), im_(re_.precision()) {}

Scalar Scalar::from_longs(long re, long im, Bits bits) { return {Real(re, bits), Real(im, bits)}; }

Bits Scalar::precision() const { return re_.precision() > im_.precision() ? re_.precision() : im_.precision(); }

Scalar Scalar::with_precision(Bits bits) const { return {re_.with_precision(bits), im_.with_precision(bits)}; }

std::string Scalar::to_string(int digits) const
{
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    Real re = re_ * rhs.re_ - im_ * rhs.im_;
    Real im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    if (rhs.is_zero()) {
        throw DivisionByZero("complex division by zero");
    }
    // Smith's algorithm keeps the intermediate quotient bounded.
    if (mixweyl::abs(rhs.im_) <= mixweyl::abs(rhs.re_)) {
        const Real ratio = rhs.im_ / rhs.re_;
        const Real denom = rhs.re_ + rhs.im_ * ratio;
        Real re = (re_ + im_ * ratio) / denom;
        Real im = (im_ - re_ * ratio) / denom;
        re_ = std::move(re);
        im_ = std::move(im);
    } else {
        const Real ratio = rhs.re_ / rhs.im_;
        const Real denom = rhs.re_ * ratio + rhs.im_;
        Real re = (re_ * ratio + im_) / denom;
        Real im = (im_ * ratio - re_) / denom;
        re_ = std::move(re);
        im_ = std::move(im);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Real& rhs)
{
    re_ *= rhs;
    im_ *= rhs;
    return *this;
}

Scalar& Scalar::operator/=(const Real& rhs)
{
    re_ /= rhs;
    im_ /= rhs;
    return *this;
}

Scalar operator+(Scalar lhs, const Real& rhs)
{
    lhs.re_ += rhs;
    widen(lhs.im_, rhs.precision());
    return lhs;
}

Scalar operator-(Scalar lhs, const Real& rhs)
{
    lhs.re_ -= rhs;
    widen(lhs.im_, rhs.precision());
    return lhs;
}

Scalar operator-(const Real& lhs, const Scalar& rhs) { return Scalar(lhs) - rhs; }

Real Defect::relative() const
{
    const Real magnitude = value.abs();
    if (scale.is_zero()) {
        return magnitude;
    }
    return magnitude / scale;
}

Real working_tolerance(Bits bits, Bits slack) { return Real::power_of_two(-(bits - slack), 64); }

void check_range(const Real& x, const PrecisionConfig& precision, std::string_view what)
{
    if (!x.is_finite()) {
        throw PrecisionExhausted(std::string(what) + " is not finite");
    }
    if (precision.mode == PrecisionMode::native_float && !std::isfinite(x.to_double())) {
        throw PrecisionExhausted(std::string(what) + " overflows native-float range");
    }
}

void check_range(const Scalar& z, const PrecisionConfig& precision, std::string_view what)
{
    check_range(z.re(), precision, what);
    check_range(z.im(), precision, what);
}

}  // namespace mixweyl
