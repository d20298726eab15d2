#include "support.hpp"

#include "mixweyl/criteria.hpp"

namespace mixweyl::test {
namespace {

const Real* witness(const CriterionVerdict& v, const std::string& name)
{
    for (const Witness& w : v.witnesses) {
        if (w.name == name) {
            return &w.value;
        }
    }
    return nullptr;
}

CoefficientExpr expr(const char* text) { return CoefficientExpr::parse(text); }

TEST(Criteria, SumCriterionHoldsForUnitLeadingCoefficient)
{
    const CriterionVerdict v = thm51_check(make_model("1", "4^t", "0", "0", "4^t"), 200);
    EXPECT_EQ(v.outcome, Outcome::holds);
    EXPECT_EQ(v.which, Criterion::thm51);
    EXPECT_FALSE(v.failing_condition.has_value());
    ASSERT_NE(witness(v, "K"), nullptr);
    EXPECT_EQ(*witness(v, "K"), 0);
    ASSERT_NE(witness(v, "partial_sum"), nullptr);
    EXPECT_GT(*witness(v, "partial_sum"), 100);
}

TEST(Criteria, SumCriterionFailsOnConvergentSeries)
{
    const CriterionVerdict v = thm51_check(make_model("-(4^t)", "4^t", "0", "0", "1"), 200);
    EXPECT_EQ(v.outcome, Outcome::fails);
    EXPECT_EQ(v.failing_condition, 2);
}

TEST(Criteria, SumCriterionFailsOnUnboundedRatio)
{
    const CriterionVerdict v = thm51_check(make_model("1", "4^t", "sqrt(4^(2*t)+4^t)", "0", "4^t"), 200);
    EXPECT_EQ(v.outcome, Outcome::fails);
    EXPECT_EQ(v.failing_condition, 1);
}

TEST(Criteria, SumCriterionBoundedRatioWithPolynomialGrowth)
{
    const CriterionVerdict v = thm51_check(make_model("t+1", "0", "3*t-2", "0", "0"), 200);
    EXPECT_EQ(v.outcome, Outcome::holds) << v.reason;
}

TEST(Criteria, TableBackedLeadingCoefficientIsUnknown)
{
    CoefficientTable tab{-1, {}};
    for (int k = 0; k < 10; ++k) {
        tab.values.push_back(1);
    }
    const CoefficientSet m(0, Coefficient(tab), Coefficient::parse("0"), Coefficient::parse("0"), Coefficient::parse("0"),
                           Coefficient::parse("0"), PrecisionConfig::big(kBits));
    const CriterionVerdict v = thm51_check(m, 8);
    EXPECT_EQ(v.outcome, Outcome::unknown);
    EXPECT_FALSE(v.reason.empty());
}

TEST(Criteria, ComparisonCriterionHoldsWithConstantM)
{
    const CriterionVerdict v = thm52_check(make_model("1", "4^t", "0", "0", "4^t"), expr("1"), 200);
    EXPECT_EQ(v.outcome, Outcome::holds) << v.reason;
    EXPECT_EQ(v.which, Criterion::thm52);
    ASSERT_NE(witness(v, "k3"), nullptr);
    EXPECT_LE(*witness(v, "k3"), 1);
    ASSERT_NE(witness(v, "k4"), nullptr);
    EXPECT_EQ(*witness(v, "k4"), 0);
}

TEST(Criteria, ComparisonCriterionFailsWhenSeriesConverges)
{
    const CriterionVerdict v = thm52_check(make_model("1", "4^t", "0", "0", "4^t"), expr("4^t"), 200);
    EXPECT_EQ(v.outcome, Outcome::fails);
    EXPECT_EQ(v.failing_condition, 4);
}

TEST(Criteria, ComparisonCriterionNeedsPositiveLeadingCoefficient)
{
    const CriterionVerdict v = thm52_check(make_model("-(4^t)", "4^t", "0", "0", "1"), expr("1"), 200);
    EXPECT_EQ(v.outcome, Outcome::fails);
    EXPECT_EQ(v.failing_condition, 0);
}

TEST(Criteria, ComparisonCriterionCouplingBound)
{
    const CriterionVerdict v =
        thm52_check(make_model("1", "4^t", "sqrt(4^(2*t)+4^t)", "0", "4^t"), expr("1"), 200);
    EXPECT_EQ(v.outcome, Outcome::fails);
    EXPECT_EQ(v.failing_condition, 1);
}

TEST(Criteria, ComparisonCriterionWithGrowingM)
{
    // p = 1, q = -t, M = t: k3 = 1, sum 1/sqrt(t) diverges.
    const CriterionVerdict v = thm52_check(make_model("1", "-t", "0", "0", "0"), expr("t+1"), 200);
    EXPECT_EQ(v.outcome, Outcome::holds) << v.reason;
}

TEST(Criteria, ComparisonSequenceMustBePositive)
{
    const CoefficientSet m = make_model("1", "0", "0", "0", "0");
    EXPECT_THROW(thm52_check(m, expr("t-5"), 200), ModelError);
    EXPECT_THROW(thm52_check(m, expr("-1"), 200), ModelError);
}

TEST(Criteria, Names)
{
    EXPECT_EQ(to_string(Outcome::holds), "holds");
    EXPECT_EQ(to_string(Outcome::fails), "fails");
    EXPECT_EQ(to_string(Outcome::unknown), "unknown");
    EXPECT_EQ(to_string(Criterion::thm51), "thm51");
    EXPECT_EQ(to_string(Criterion::thm52), "thm52");
}

}  // namespace
}  // namespace mixweyl::test
