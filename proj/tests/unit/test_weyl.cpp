#include "support.hpp"

#include "mixweyl/weyl.hpp"

namespace mixweyl::test {
namespace {

const Real kZero(0, kBits);

TEST(Weyl, CanonicalPairStartingValues)
{
    const Real alpha = Real::pi(kBits) / 6;
    const FundamentalPair pair = fundamental_pair(free_model(), cx(0, 1), alpha, 4);
    EXPECT_TRUE(close(pair.phi.y1(0), Scalar(sin(alpha)), 1e-70));
    EXPECT_TRUE(close(pair.phi.qd(-1), Scalar(-cos(alpha)), 1e-70));
    EXPECT_TRUE(close(pair.psi.y1(0), Scalar(cos(alpha)), 1e-70));
    EXPECT_TRUE(close(pair.psi.qd(-1), Scalar(sin(alpha)), 1e-70));
    EXPECT_THROW(fundamental_pair(free_model(), cx(0, 1), Real::pi(kBits), 4), ModelError);
    EXPECT_THROW(fundamental_pair(free_model(), cx(0, 1), Real(-1, kBits), 4), ModelError);
}

TEST(Weyl, FreeModelCorners)
{
    const FundamentalPair pair = fundamental_pair(free_model(), cx(0, 1), kZero, 0);
    const CornerValues k = corner_values(pair, 0);
    EXPECT_TRUE(close(k.A, cx(-1, 0), 0));
    EXPECT_TRUE(close(k.B, cx(-1, 0), 0));
    EXPECT_TRUE(close(k.C, cx(1, -1), 0));
    EXPECT_TRUE(close(k.D, cx(0, -1), 0));
    EXPECT_THROW(corner_values(pair, 1), WindowError);
}

TEST(Weyl, FreeModelFirstDisc)
{
    const WeylDisc d = weyl_disc(free_model(), cx(0, 1), kZero, 0);
    EXPECT_TRUE(close(d.center, Scalar(kZero, rational(1, 2)), 1e-70));
    EXPECT_TRUE(close(d.radius, rational(1, 2), 1e-70));
    EXPECT_TRUE(close(d.S, Real(1, kBits), 0));
}

TEST(Weyl, DiscFromOracleCorners)
{
    // Center and radius from corner values of the independent diagonal recursion.
    const CoefficientSet m = make_model("1", "4^t", "0", "0", "4^t");
    const Scalar lambda = cx(1, 1);
    const long N = 6;
    const std::vector<Scalar> phi = diagonal_oracle(m, lambda, cx(0, 0), cx(-1, 0), N);
    const std::vector<Scalar> psi = diagonal_oracle(m, lambda, cx(1, 0), cx(0, 0), N);
    const auto idx = [](long t) { return static_cast<std::size_t>(t + 1); };
    const Scalar A = phi[idx(N + 1)];
    const Scalar B = m.value(Coef::p, N) * (phi[idx(N + 1)] - phi[idx(N)]);
    const Scalar C = psi[idx(N + 1)];
    const Scalar D = m.value(Coef::p, N) * (psi[idx(N + 1)] - psi[idx(N)]);
    const Scalar den = C * D.conj() - C.conj() * D;
    const Scalar center = -(A * D.conj() - B * C.conj()) / den;
    const Real radius = Real(1, kBits) / den.abs();

    const WeylDisc d = weyl_disc(m, lambda, kZero, N);
    EXPECT_LE(((d.center - center).abs() / center.abs()).to_double(), 1e-60);
    EXPECT_LE((abs(d.radius - radius) / radius).to_double(), 1e-60);
}

TEST(Weyl, MPointsOnTheFirstCircle)
{
    const FundamentalPair pair = fundamental_pair(free_model(), cx(0, 1), kZero, 0);
    const CornerValues k = corner_values(pair, 0);
    const Scalar at_zero = m_point(k, kZero);
    const Scalar at_infinity = m_point(k, std::nullopt);
    EXPECT_TRUE(close(at_zero, cx(0, 1), 1e-70));
    EXPECT_TRUE(close(at_infinity, Scalar(rational(1, 2), rational(1, 2)), 1e-70));
    const Scalar center(kZero, rational(1, 2));
    EXPECT_TRUE(close((at_zero - center).abs(), rational(1, 2), 1e-70));
    EXPECT_TRUE(close((at_infinity - center).abs(), rational(1, 2), 1e-70));
}

TEST(Weyl, BoundaryAngleSweepStaysOnCircle)
{
    const CoefficientSet m = make_model("-(4^t)", "4^t", "0", "2^t+2^(-t)", "1");
    const Scalar lambda = cx(0, 1);
    const long N = 7;
    const FundamentalPair pair = fundamental_pair(m, lambda, kZero, N);
    const CornerValues k = corner_values(pair, N);
    const WeylDisc d = weyl_disc(m, lambda, kZero, N);
    for (int j = 0; j < 8; ++j) {
        const Real beta = Real::pi(kBits) * j / 8;
        const Scalar mp = m_point(k, cot_or_infinity(beta));
        EXPECT_LE((abs((mp - d.center).abs() - d.radius) / d.radius).to_double(), 1e-50) << j;
    }
}

TEST(Weyl, CotangentOfBoundaryAngle)
{
    EXPECT_FALSE(cot_or_infinity(kZero).has_value());
    EXPECT_TRUE(close(*cot_or_infinity(Real::pi(kBits) / 4), Real(1, kBits), 1e-70));
    EXPECT_TRUE(close(*cot_or_infinity(Real::pi(kBits) / 2), kZero, 1e-70));
}

TEST(Weyl, ChiWithZeroMIsPhi)
{
    const FundamentalPair pair = fundamental_pair(free_model(), cx(0, 1), kZero, 5);
    const Trajectory c = chi(pair, Scalar::zero(kBits));
    EXPECT_EQ(max_relative_deviation(c, pair.phi, 5), kZero);
}

TEST(Weyl, ChiOnCircleLiesOnCircle)
{
    const CoefficientSet m = make_model("1", "4^t", "sqrt(4^(2*t)+4^t)", "0", "4^t");
    const Scalar lambda = cx(0, 1);
    const long N = 10;
    const FundamentalPair pair = fundamental_pair(m, lambda, Real::pi(kBits) / 4, N);
    const CornerValues k = corner_values(pair, N);
    for (const auto& z : {std::optional<Real>{}, std::optional<Real>{Real(2, kBits)}}) {
        const Trajectory c = chi_on_circle(m, pair, k, z);
        const Scalar mm = m_from_chi(c, pair.alpha);
        EXPECT_LE(((mm - m_point(k, z)).abs() / mm.abs()).to_double(), 1e-50);
        EXPECT_LE(on_circle_defect(m, c, mm, lambda, N).relative().to_double(), 1e-60);
    }
}

TEST(Weyl, ChiAtCenterIsInside)
{
    const CoefficientSet m = free_model();
    const Scalar lambda = cx(0, 1);
    for (long N : {0L, 3L, 12L}) {
        const FundamentalPair pair = fundamental_pair(m, lambda, kZero, N);
        const CornerValues k = corner_values(pair, N);
        const WeylDisc d = weyl_disc(m, lambda, kZero, N);
        const Trajectory c = chi_at_center(m, pair, k, d.S);
        const Scalar center = m_from_chi(c, kZero);
        EXPECT_LE(((center - d.center).abs() / d.center.abs()).to_double(), 1e-60) << N;
        const Defect inside = on_circle_defect(m, c, center, lambda, N);
        EXPECT_LT(inside.value.re().sign(), 0) << N;
    }
}

TEST(Weyl, OnCircleNeedsNonrealLambda)
{
    const CoefficientSet m = free_model();
    const Trajectory y = propagate(m, cx(1, 0), {cx(1, 0), cx(0, 0)}, 3);
    EXPECT_THROW(on_circle_defect(m, y, cx(0, 1), cx(1, 0), 3), InadmissibleLambda);
}

TEST(Weyl, DiscsNestAndRadiusIdentityHolds)
{
    const CoefficientSet m = make_model("1", "4^t", "0", "0", "4^t");
    const Scalar lambda = cx(0, 1);
    const DiscSequence seq = disc_sequence(m, lambda, kZero, 60);
    ASSERT_EQ(seq.discs.size(), 61u);
    EXPECT_GT(seq.guard_bits, 0);
    for (std::size_t i = 0; i + 1 < seq.discs.size(); ++i) {
        const WeylDisc& outer = seq.discs[i];
        const WeylDisc& inner = seq.discs[i + 1];
        EXPECT_EQ(inner.N, outer.N + 1);
        EXPECT_LE(((inner.center - outer.center).abs() - (outer.radius - inner.radius)).to_double(), 1e-40);
        EXPECT_TRUE(close(inner.radius * inner.S * 2, Real(1, kBits), 1e-60));
    }
}

TEST(Weyl, NearlyVanishingPsiAtTheLeftEnd)
{
    // alpha = pi/2 rounded: psi(0) = cos(alpha) is about 2^-257, so the first disc is nearly a half-plane.
    const CoefficientSet m = free_model();
    const DiscSequence seq = disc_sequence(m, cx(0, 1), Real::pi(kBits) / 2, 20);
    EXPECT_GT(seq.discs.front().radius.to_double(), 1e70);
    EXPECT_GT(seq.guard_bits, 2 * kBits);
    for (const WeylDisc& d : seq.discs) {
        EXPECT_TRUE(close(d.radius * d.S * 2, Real(1, kBits), 1e-60)) << d.N;
    }
    EXPECT_LT(seq.discs.back().radius.to_double(), 1.0);
}

TEST(Weyl, DiscMatchesSinglePointDisc)
{
    const CoefficientSet m = make_model("-(4^t)", "4^t", "0", "0", "1");
    const DiscSequence seq = disc_sequence(m, cx(1, 1), kZero, 20);
    const WeylDisc single = weyl_disc(m, cx(1, 1), kZero, 20);
    EXPECT_TRUE(close(seq.discs.back().center, single.center, 1e-60));
    EXPECT_TRUE(close(seq.discs.back().radius, single.radius, 1e-60));
}

TEST(Weyl, NativeModeRefusesHeavyCancellation)
{
    const CoefficientSet m = make_model("1", "4^t", "0", "0", "4^t", 0, PrecisionConfig::native());
    EXPECT_THROW(disc_sequence(m, cx(0, 1), Real(0, 53), 80), PrecisionExhausted);
}

TEST(Weyl, DiscNeedsNonrealLambda)
{
    EXPECT_THROW(disc_sequence(free_model(), cx(1, 0), kZero, 10), InadmissibleLambda);
}

TEST(Weyl, RegularEigenvalueResidual)
{
    const CoefficientSet m = free_model();
    const BoundaryAngles angles{kZero, kZero};
    for (long re : {-3L, 1L, 3L, 5L}) {
        const Scalar residual = regular_eigen_residual(m, cx(re, 0), angles, 0);
        EXPECT_TRUE(close(residual, cx(1 - re, 0), 1e-70)) << re;
    }
    EXPECT_TRUE(close(regular_eigen_residual(m, cx(0, 1), angles, 0), cx(1, -1), 1e-70));
    EXPECT_THROW(regular_eigen_residual(m, cx(1, 0), {kZero, Real(4, kBits)}, 0), ModelError);
}

TEST(Weyl, ClassifyFreeModel)
{
    const ClassificationReport r = classify(free_model(), cx(0, 1), kZero);
    EXPECT_EQ(r.verdict, LimitType::LPC);
    EXPECT_EQ(r.l2_solution_count, 1);
    EXPECT_EQ(r.psi_profile.growth_verdict, GrowthVerdict::divergent);
    EXPECT_EQ(r.chi_profile.growth_verdict, GrowthVerdict::bounded);
    ASSERT_EQ(r.disc_samples.size(), 201u);
    ASSERT_EQ(r.chi_profile.partial_sums.size(), 201u);
    EXPECT_TRUE(r.guidance.empty());
    ASSERT_TRUE(r.cross_check_verdict.has_value());
    EXPECT_EQ(*r.cross_check_verdict, LimitType::LPC);
    EXPECT_LE((r.m_limit - r.disc_samples.back().center).abs().to_double(), 1e-20);
}

TEST(Weyl, ClassifyRejectsRealLambdaAndBadOptions)
{
    EXPECT_THROW(classify(free_model(), cx(1, 0), kZero), InadmissibleLambda);
    ClassifyOptions bad;
    bad.window = 500;
    EXPECT_THROW(classify(free_model(), cx(0, 1), kZero, bad), ModelError);
}

}  // namespace
}  // namespace mixweyl::test
