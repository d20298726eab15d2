#include "support.hpp"

namespace mixweyl::test {
namespace {

TEST(Model, FreeModelStepMatrixAtI)
{
    const StepMatrix s = step_matrix(free_model(), 0, cx(0, 1));
    EXPECT_TRUE(close(s.A.a11, cx(0, 0), 0));
    EXPECT_TRUE(close(s.A.a12, cx(1, 0), 0));
    EXPECT_TRUE(close(s.A.a21, cx(0, -1), 0));
    EXPECT_TRUE(close(s.A.a22, cx(0, 1), 0));
    const Mat2 I_minus_A = s.backward();
    EXPECT_TRUE(close(I_minus_A.det(), cx(1, 0), 0));
}

TEST(Model, CouplingTermVanishesWithoutCOrH)
{
    const Scalar lambda = cx(2, 3);
    for (const CoefficientSet& m : {make_model("2+t", "t", "0", "2^t", "1"), make_model("2", "1", "t", "0", "3")}) {
        for (long t = -1; t < 6; ++t) {
            EXPECT_TRUE(step_matrix(m, t, lambda).A.a11.is_zero());
        }
    }
}

TEST(Model, DerivedCoefficientsOfCoupledModel)
{
    // p=2, q=1, c=3, h=1, d=4 at lambda = 5: lambda - d = 1.
    const CoefficientSet m = make_model("2", "1", "3", "1", "4");
    const DerivedSample s = derived_at(m, 1, cx(5, 0));
    EXPECT_TRUE(close(s.alpha, cx(3, 0), 0));
    EXPECT_TRUE(close(s.p_tilde, cx(8, 0), 0));
    EXPECT_TRUE(close(s.H, cx(-3, 0), 0));
    ASSERT_TRUE(s.q_tilde.has_value());
    EXPECT_TRUE(close(*s.q_tilde, cx(2, 0), 0));
    EXPECT_TRUE(close(s.M_script, cx(1, 0), 1e-70));
    EXPECT_FALSE(derived_at(m, -1, cx(5, 0)).q_tilde.has_value());
    EXPECT_THROW(derived_at(m, 1, cx(4, 0)), DivisionByZero);
}

TEST(Model, ScriptMMatchesDefinition)
{
    const CoefficientSet m = make_model("1", "4^t", "sqrt(4^(2*t)+4^t)", "0", "4^t");
    for (long t = -1; t < 8; ++t) {
        EXPECT_TRUE(close(m.script_m(t), -pow(Real(4, kBits), 2 * t), 1e-60 * std::pow(16.0, t)));
    }
    const auto cls = m.script_m_class();
    ASSERT_TRUE(cls.has_value());
    EXPECT_EQ(cls->eventual_sign(), -1);
}

TEST(Model, ZeroLeadingCoefficientRejected)
{
    const CoefficientSet m = make_model("t-2", "0", "0", "0", "0");
    EXPECT_THROW(m.value(Coef::p, 2), ModelError);
    EXPECT_THROW(m.value(Coef::q, -2), ModelError);
}

TEST(Model, TableCoefficient)
{
    CoefficientTable tab{-1, {mpq_class(1, 2), 3, 5}};
    const CoefficientSet m(0, Coefficient(tab), Coefficient::parse("0"), Coefficient::parse("0"), Coefficient::parse("0"),
                           Coefficient::parse("0"), PrecisionConfig::big(kBits));
    EXPECT_EQ(m.value(Coef::p, -1), rational(1, 2));
    EXPECT_EQ(m.value(Coef::p, 1), 5);
    EXPECT_ANY_THROW(m.value(Coef::p, 2));
    EXPECT_FALSE(m.p().growth().has_value());
}

TEST(Model, PerturbationSplit)
{
    const CoefficientSet perturbed = make_model("-(4^t)", "4^t", "0", "2^t+2^(-t)", "1");
    const PerturbationSplit split = split_perturbation(perturbed);
    EXPECT_FALSE(split.delta_is_zero);
    EXPECT_EQ(split.diagonal.p().describe(), CoefficientExpr::parse("-(4^t)").to_string());
    EXPECT_EQ(split.diagonal.q().describe(), "4^t");
    EXPECT_EQ(split.diagonal.d().describe(), "1");
    EXPECT_TRUE(split.diagonal.c().is_identically_zero());
    EXPECT_TRUE(split.diagonal.h().is_identically_zero());

    EXPECT_TRUE(split_perturbation(split.diagonal).delta_is_zero);

    const PerturbationSplit second = split_perturbation(make_model("1", "4^t", "sqrt(4^(2*t)+4^t)", "0", "4^t"));
    EXPECT_EQ(second.c.describe(), CoefficientExpr::parse("sqrt(4^(2*t)+4^t)").to_string());
    EXPECT_TRUE(second.h.is_identically_zero());
}

TEST(Model, SpectralGap)
{
    const CoefficientSet m = make_model("1", "0", "0", "0", "2");
    const SpectralPoint nonreal = spectral_gap(m, cx(0, 1), 20);
    EXPECT_TRUE(nonreal.admissible());
    EXPECT_TRUE(close(nonreal.margin, sqrt(Real(5, kBits)), 1e-70));

    const SpectralPoint hit = spectral_gap(m, cx(2, 0), 20);
    EXPECT_FALSE(hit.admissible());

    const SpectralPoint real = spectral_gap(m, cx(1, 0), 20);
    EXPECT_TRUE(real.decided_symbolically);
    EXPECT_TRUE(real.admissible());

    const SpectralPoint later = spectral_gap(make_model("1", "0", "0", "0", "t"), cx(30, 0), 20);
    EXPECT_FALSE(later.admissible());
    EXPECT_THROW(spectral_gap(m, cx(0, 1), -1), ModelError);
}

TEST(Model, PrecisionValidation)
{
    EXPECT_THROW(make_model("1", "0", "0", "0", "0", 0, PrecisionConfig::big(20)), ModelError);
    EXPECT_EQ(make_model("1", "0", "0", "0", "0", 0, PrecisionConfig::native()).bits(), 53);
}

}  // namespace
}  // namespace mixweyl::test
