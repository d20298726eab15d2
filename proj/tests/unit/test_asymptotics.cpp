#include "support.hpp"

#include "mixweyl/asymptotics.hpp"

namespace mixweyl::test {
namespace {

GrowthClass growth(const std::string& text)
{
    const auto g = asymptotic_class(CoefficientExpr::parse(text));
    EXPECT_TRUE(g.has_value()) << text;
    return g.value_or(GrowthClass{});
}

TEST(Asymptotics, SinglePower)
{
    const GrowthClass g = growth("4^t");
    EXPECT_FALSE(g.sqrt_wrapped);
    ASSERT_TRUE(g.inner.is_single_term());
    EXPECT_EQ(g.inner.dominant(), (ExpTerm{1, 4, 0}));
}

TEST(Asymptotics, SqrtKeepsDominantTermUnderTheRoot)
{
    const GrowthClass g = growth("sqrt(4^(2*t)+4^t)");
    EXPECT_TRUE(g.sqrt_wrapped);
    EXPECT_EQ(g.inner.dominant(), (ExpTerm{1, 16, 0}));
    EXPECT_EQ(compare(g.rate(), Rate{4, 1, 0}), 0);
    EXPECT_EQ(g.square(), ExpPoly::term(1, 16, 0) + ExpPoly::term(1, 4, 0));
}

TEST(Asymptotics, TermsOrderedByGrowth)
{
    const GrowthClass g = growth("2^(-t) + t^2 + 3*2^t - 1");
    ASSERT_EQ(g.inner.terms().size(), 4u);
    EXPECT_EQ(g.inner.terms()[0], (ExpTerm{3, 2, 0}));
    EXPECT_EQ(g.inner.terms()[1], (ExpTerm{1, 1, 2}));
    EXPECT_EQ(g.inner.terms()[2], (ExpTerm{-1, 1, 0}));
    EXPECT_EQ(g.inner.terms()[3], (ExpTerm{1, mpq_class(1, 2), 0}));
}

TEST(Asymptotics, CancellationIsExact)
{
    EXPECT_TRUE(growth("4^t - 2^(2*t)").is_zero());
    EXPECT_EQ(growth("(2^t)^2 - 4^t + 5").inner.constant_value(), mpq_class(5));
}

TEST(Asymptotics, EventualSign)
{
    EXPECT_EQ(growth("-(4^t)").eventual_sign(), -1);
    EXPECT_EQ(growth("t - 100").eventual_sign(), 1);
    EXPECT_EQ(growth("2^(-t) - 1").eventual_sign(), -1);
    EXPECT_EQ(growth("0").eventual_sign(), 0);
}

TEST(Asymptotics, Unrecognized)
{
    EXPECT_FALSE(asymptotic_class(CoefficientExpr::parse("sqrt(t) + t")).has_value());
    EXPECT_FALSE(asymptotic_class(CoefficientExpr::parse("1/(t+1)")).has_value());
}

TEST(Asymptotics, SeriesDivergence)
{
    EXPECT_TRUE(series_diverges(Rate::one()));
    EXPECT_TRUE(series_diverges(Rate{1, 1, -1}));
    EXPECT_FALSE(series_diverges(Rate{1, 1, mpq_class(-3, 2)}));
    EXPECT_FALSE(series_diverges(Rate{mpq_class(1, 4), 1, 0}));
    EXPECT_FALSE(series_diverges(Rate{mpq_class(1, 2), 2, 5}));
    EXPECT_TRUE(series_diverges(Rate{2, 1, -7}));
}

TEST(Asymptotics, RateComparison)
{
    EXPECT_LT(compare(Rate{2, 1, 0}, Rate{4, 2, 1}), 0);
    EXPECT_GT(compare(Rate{2, 1, 1}, Rate{4, 2, 0}), 0);
    EXPECT_LT(compare(Rate{1, 1, 5}, Rate{mpq_class(9, 8), 1, 0}), 0);
    EXPECT_EQ(compare(Rate{4, 1, 0}.nth_root(2), Rate{2, 1, 0}), 0);
}

TEST(Asymptotics, EvaluationMatchesExpression)
{
    const PrecisionConfig prec = PrecisionConfig::big(kBits);
    for (const char* text : {"2^t + 2^(-t)", "sqrt(4^(2*t)+4^t)", "-(4^t) + t^3", "(t-1)*(3/2)^t"}) {
        const CoefficientExpr e = CoefficientExpr::parse(text);
        const GrowthClass g = *asymptotic_class(e);
        for (long t = -2; t <= 12; ++t) {
            EXPECT_TRUE(close(g.evaluate(t, kBits), eval_coefficient(e, t, prec), 1e-60)) << text << " t=" << t;
        }
    }
}

TEST(Asymptotics, Shift)
{
    const ExpPoly f = ExpPoly::term(1, 4, 0) + ExpPoly::variable();
    const ExpPoly g = f.shift(1);
    for (long t = 0; t < 5; ++t) {
        EXPECT_EQ(g.evaluate(t, kBits), f.evaluate(t - 1, kBits));
    }
}

TEST(Asymptotics, Thresholds)
{
    const ExpPoly f = ExpPoly::term(1, 2, 0) - ExpPoly::term(10, 1, 1);
    const auto onset = dominance_onset(f, 0);
    ASSERT_TRUE(onset.has_value());
    for (long t = *onset; t < *onset + 40; ++t) {
        const Real lead = Real::power_of_two(t, kBits);
        EXPECT_GE(lead, Real(20 * t, kBits)) << t;
    }
    EXPECT_EQ(decay_below(ExpPoly::term(1, mpq_class(1, 2), 0), 1e-3, 0), 10);
    const auto large = exceeds_from(ExpPoly::variable(), 50.0, 0);
    ASSERT_TRUE(large.has_value());
    EXPECT_GE(*large, 50);
    EXPECT_LE(*large, 100);
    EXPECT_FALSE(exceeds_from(ExpPoly::constant(3), 50.0, 0).has_value());
}

}  // namespace
}  // namespace mixweyl::test
