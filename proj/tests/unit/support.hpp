#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mixweyl/model.hpp"
#include "mixweyl/real.hpp"
#include "mixweyl/recurrence.hpp"

namespace mixweyl::test {

inline constexpr Bits kBits = 256;

inline CoefficientSet make_model(const std::string& p, const std::string& q, const std::string& c,
                                 const std::string& h, const std::string& d, long a = 0,
                                 PrecisionConfig precision = PrecisionConfig::big(kBits))
{
    return CoefficientSet(a, Coefficient::parse(p), Coefficient::parse(q), Coefficient::parse(c), Coefficient::parse(h),
                          Coefficient::parse(d), precision);
}

inline CoefficientSet free_model(Bits bits = kBits) { return make_model("1", "0", "0", "0", "0", 0, PrecisionConfig::big(bits)); }

inline Scalar cx(long re, long im, Bits bits = kBits) { return Scalar::from_longs(re, im, bits); }

inline Real rational(long num, long den, Bits bits = kBits) { return Real(num, bits) / Real(den, bits); }

inline double distance(const Scalar& u, const Scalar& v) { return (u - v).abs().to_double(); }

inline ::testing::AssertionResult close(const Scalar& actual, const Scalar& expected, double tol)
{
    const Real gap = (actual - expected).abs();
    if (gap.to_double() <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << actual.to_string(20) << " vs " << expected.to_string(20) << " (gap "
                                         << gap.to_string(4) << ")";
}

inline ::testing::AssertionResult close(const Real& actual, const Real& expected, double tol)
{
    return close(Scalar(actual), Scalar(expected), tol);
}

/// y1 on t = a-1..N+1 for a model with c = h = 0, straight from
/// p(t) Dy1(t) = p(t-1) Dy1(t-1) + (q(t) - lambda) y1(t), p(a-1) Dy1(a-1) = c2.
inline std::vector<Scalar> diagonal_oracle(const CoefficientSet& model, const Scalar& lambda, const Scalar& c1,
                                           const Scalar& c2, long N)
{
    const long a = model.a();
    std::vector<Scalar> y{c1 - c2 / model.value(Coef::p, a - 1), c1};
    Scalar flux = c2;  // p(t-1) Dy1(t-1) with c = 0
    for (long t = a; t <= N; ++t) {
        flux = flux + (model.value(Coef::q, t) - lambda) * y.back();
        y.push_back(y.back() + flux / model.value(Coef::p, t));
    }
    return y;
}

}  // namespace mixweyl::test
