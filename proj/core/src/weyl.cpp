#include "mixweyl/weyl.hpp"

#include <algorithm>
#include <string>

namespace mixweyl {

namespace {

void check_angle(const Real& angle, const char* name)
{
    if (angle.sign() < 0 || angle >= Real::pi(angle.precision())) {
        throw ModelError(std::string(name) + " must lie in [0, pi), got " + angle.to_string(17));
    }
}

void require_nonreal(const Scalar& lambda, const char* what)
{
    if (lambda.is_real()) {
        throw InadmissibleLambda(std::string(what) + " needs nonreal lambda, got " + lambda.to_string(17));
    }
}

Real magnitude_squared(const Trajectory& y, long t) { return y.y1(t).norm() + y.y2(t).norm(); }

WeylDisc disc_from_corner(const CornerValues& k, const Real& S)
{
    const Scalar w_psi = k.C * k.D.conj() - k.C.conj() * k.D;
    const Scalar w_phi = k.A * k.D.conj() - k.B * k.C.conj();
    if (w_psi.is_zero()) {
        throw PrecisionExhausted("[psi, psi](" + std::to_string(k.N) + ") cancelled to zero");
    }
    const Bits bits = w_psi.precision();
    return {k.N, -w_phi / w_psi, Real(1, bits) / w_psi.abs(), S};
}

// log2 of the amplification from the corner values to the disc center.
long cancellation_bits(const CornerValues& k, const Real& S, const Real& center_bound, const Scalar& lambda)
{
    const Real cd = k.C.abs() * k.D.abs();
    const Real num = k.A.abs() * k.D.abs() + k.B.abs() * k.C.abs() + cd * center_bound * 2;
    const Real den = abs(lambda.im()) * S * 2;
    if (num.is_zero()) {
        return 0;
    }
    return num.binary_exponent() - den.binary_exponent() + 1;
}

struct DiscRun {
    CoefficientSet model;  // widened by the guard bits
    FundamentalPair pair;  // at the widened precision
    std::vector<Real> S;   // at the widened precision
    DiscSequence sequence;
};

DiscRun run_discs(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N_max)
{
    require_nonreal(lambda, "a Weyl disc");
    const long a = model.a();
    if (N_max < a) {
        throw ModelError("disc sequence needs N >= a, got N=" + std::to_string(N_max));
    }
    const Bits bits = model.bits();
    DiscRun run{model, fundamental_pair(model, lambda, alpha, N_max), {}, {}};

    run.S = partial_sums(run.pair.psi);
    const std::vector<Real>& S = run.S;
    // First disc with [psi, psi](a) = 2 i Im(lambda) S_a, which stays accurate
    // when psi(a) is tiny and the bracket itself cancels.
    const CornerValues k0 = corner_values(run.pair, a);
    const Real w0 = abs(lambda.im()) * S.front() * 2;
    if (w0.is_zero()) {
        throw PrecisionExhausted("psi vanishes at t=" + std::to_string(a) + "; the first disc is a half-plane");
    }
    const Real center_bound = (k0.A * k0.D.conj() - k0.B * k0.C.conj()).abs() / w0 + Real(1, bits) / w0 + 1;
    long worst = 0;
    for (long N = a; N <= N_max; ++N) {
        const CornerValues k = corner_values(run.pair, N);
        worst = std::max(worst, cancellation_bits(k, S[static_cast<std::size_t>(N - a)], center_bound, lambda));
    }

    if (model.precision().mode == PrecisionMode::native_float) {
        if (worst > 12) {
            throw PrecisionExhausted("native-float disc centers lose about " + std::to_string(worst) +
                                     " bits to cancellation; use big-float");
        }
        for (long N = a; N <= N_max; ++N) {
            run.sequence.discs.push_back(disc_from_corner(corner_values(run.pair, N), S[static_cast<std::size_t>(N - a)]));
        }
        return run;
    }

    const Bits guard = std::max<long>(worst, 0) + 32;
    if (guard > kMaxGuardBits) {
        throw PrecisionExhausted("disc centers need " + std::to_string(guard) + " guard bits, above the cap of " +
                                 std::to_string(kMaxGuardBits));
    }
    const Bits wide = bits + guard;
    run.model = model.with_bits(wide);
    run.pair = fundamental_pair(run.model, lambda.with_precision(wide), alpha, N_max);
    run.S = partial_sums(run.pair.psi);
    run.sequence.guard_bits = guard;
    for (long N = a; N <= N_max; ++N) {
        const WeylDisc d = disc_from_corner(corner_values(run.pair, N), run.S[static_cast<std::size_t>(N - a)]);
        run.sequence.discs.push_back({N, d.center.with_precision(bits), d.radius.with_precision(bits), d.S.with_precision(bits)});
    }
    return run;
}

bool tail_settled(const std::vector<Real>& sums, long window, double rel_tol)
{
    const Real& last = sums.back();
    if (last.is_zero()) {
        return true;
    }
    const Real& before = sums[sums.size() - 1 - static_cast<std::size_t>(window)];
    return ((last - before) / last).to_double() < rel_tol;
}

bool grows_by(const std::vector<Real>& sums, std::size_t half_index, double factor)
{
    const Real& base = sums[half_index];
    if (base.is_zero()) {
        return !sums.back().is_zero();
    }
    return (sums.back() / base) > Real::from_double(factor, base.precision());
}

ClassificationReport classify_at(const CoefficientSet& model, const Scalar& lambda, const Real& alpha,
                                 const ClassifyOptions& options)
{
    require_nonreal(lambda, "classification");
    const SpectralPoint gap = spectral_gap(model, lambda, options.n_max + 1);
    if (!gap.admissible()) {
        throw InadmissibleLambda("lambda " + lambda.to_string(17) + " is not admissible (margin " + gap.margin.to_string(6) +
                                 ")");
    }
    const long a = model.a();
    DiscRun run = run_discs(model, lambda, alpha, options.n_max);

    ClassificationReport report;
    report.lambda = lambda;
    report.alpha = alpha;
    report.guard_bits = run.sequence.guard_bits;
    report.m_limit = run.sequence.discs.back().center;

    for (const WeylDisc& d : run.sequence.discs) {
        report.psi_profile.partial_sums.push_back(d.S);
    }
    const CornerValues corner = corner_values(run.pair, options.n_max);
    const Trajectory chi_center = chi_at_center(run.model, run.pair, corner, run.S.back());
    for (const Real& T : partial_sums(chi_center)) {
        report.chi_profile.partial_sums.push_back(T.with_precision(model.bits()));
    }

    const auto half_index = static_cast<std::size_t>(std::max(options.n_max / 2, a) - a);
    auto judge = [&](L2Profile& profile) {
        if (tail_settled(profile.partial_sums, options.window, options.rel_tol)) {
            profile.growth_verdict = GrowthVerdict::bounded;
        } else if (grows_by(profile.partial_sums, half_index, options.divergence_factor)) {
            profile.growth_verdict = GrowthVerdict::divergent;
        } else {
            profile.growth_verdict = GrowthVerdict::undecided;
        }
    };
    judge(report.psi_profile);
    judge(report.chi_profile);

    const auto& discs = run.sequence.discs;
    const Real& r_last = discs.back().radius;
    const Real& r_before = discs[discs.size() - 1 - static_cast<std::size_t>(options.window)].radius;
    const bool radius_stalled = ((r_before - r_last) / r_before).to_double() < options.rel_tol;

    const bool psi_bounded = report.psi_profile.growth_verdict == GrowthVerdict::bounded;
    const bool psi_divergent = report.psi_profile.growth_verdict == GrowthVerdict::divergent;
    const bool chi_bounded = report.chi_profile.growth_verdict == GrowthVerdict::bounded;
    if (psi_bounded && chi_bounded && radius_stalled) {
        report.verdict = LimitType::LCC;
        report.l2_solution_count = 2;
    } else if (psi_divergent && chi_bounded) {
        report.verdict = LimitType::LPC;
        report.l2_solution_count = 1;
    } else {
        report.verdict = LimitType::undecided;
        report.guidance = "psi profile " + to_string(report.psi_profile.growth_verdict) + ", chi profile " +
                          to_string(report.chi_profile.growth_verdict) + "; raise n_max or the precision";
    }
    report.disc_samples = std::move(run.sequence.discs);
    return report;
}

}  // namespace

void BoundaryAngles::validate() const
{
    check_angle(alpha, "alpha");
    check_angle(beta, "beta");
}

FundamentalPair fundamental_pair(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N)
{
    check_angle(alpha, "alpha");
    const Bits bits = std::max(model.bits(), alpha.precision());
    const Real wide_alpha = alpha.with_precision(bits);
    const Real s = sin(wide_alpha);
    const Real c = cos(wide_alpha);
    Trajectory phi = propagate(model, lambda, {Scalar(s), Scalar(-c)}, N);
    Trajectory psi = propagate(model, lambda, {Scalar(c), Scalar(s)}, N);
    return {wide_alpha, std::move(phi), std::move(psi)};
}

CornerValues corner_values(const FundamentalPair& pair, long N)
{
    CornerValues k{N, pair.phi.y1(N + 1), pair.phi.qd(N), pair.psi.y1(N + 1), pair.psi.qd(N)};
    const Scalar ad = k.A * k.D;
    const Scalar bc = k.B * k.C;
    const Bits bits = k.A.precision();
    const Defect unit{ad - bc - Scalar::one(bits), ad.abs() + bc.abs()};
    if (unit.relative() > working_tolerance(bits / 2, 0)) {
        throw PrecisionExhausted("AD - BC drifted from 1 at N=" + std::to_string(N) + " (relative " +
                                 unit.relative().to_string(3) + ")");
    }
    return k;
}

std::optional<Real> cot_or_infinity(const Real& beta)
{
    check_angle(beta, "beta");
    if (beta.is_zero()) {
        return std::nullopt;
    }
    return cos(beta) / sin(beta);
}

Scalar m_point(const CornerValues& corner, const std::optional<Real>& z)
{
    if (!z) {
        return -corner.A / corner.C;
    }
    return -(corner.A * *z + corner.B) / (corner.C * *z + corner.D);
}

Trajectory chi(const FundamentalPair& pair, const Scalar& m)
{
    const Trajectory& phi = pair.phi;
    const Trajectory& psi = pair.psi;
    const long a = phi.a();
    const long N = std::min(phi.N(), psi.N());
    std::vector<Scalar> y1;
    std::vector<Scalar> y2;
    std::vector<Scalar> qd;
    for (long t = a - 1; t <= N; ++t) {
        y1.push_back(phi.y1(t) + m * psi.y1(t));
        y2.push_back(phi.y2(t) + m * psi.y2(t));
        qd.push_back(phi.qd(t) + m * psi.qd(t));
    }
    y1.push_back(phi.y1(N + 1) + m * psi.y1(N + 1));
    return {phi.lambda(), a, N, std::move(y1), std::move(y2), std::move(qd)};
}

Trajectory chi_on_circle(const CoefficientSet& model, const FundamentalPair& pair, const CornerValues& corner,
                         const std::optional<Real>& z)
{
    const Scalar& lambda = pair.psi.lambda();
    if (!z) {
        return propagate_backward(model, lambda, {Scalar::zero(model.bits()), -Scalar::one(model.bits()) / corner.C},
                                  corner.N);
    }
    const Scalar denom = corner.C * *z + corner.D;
    const Scalar inv = Scalar::one(model.bits()) / denom;
    return propagate_backward(model, lambda, {inv, -(inv * *z)}, corner.N);
}

Trajectory chi_at_center(const CoefficientSet& model, const FundamentalPair& pair, const CornerValues& corner,
                         const Real& S_N)
{
    const Scalar& lambda = pair.psi.lambda();
    require_nonreal(lambda, "the disc center");
    const Scalar w(Real(model.bits()), lambda.im() * S_N * 2);
    return propagate_backward(model, lambda, {-corner.C.conj() / w, -corner.D.conj() / w}, corner.N);
}

Scalar m_from_chi(const Trajectory& chi, const Real& alpha)
{
    const long a = chi.a();
    return chi.y1(a) * cos(alpha) + chi.qd(a - 1) * sin(alpha);
}

Defect on_circle_defect(const CoefficientSet& model, const Trajectory& chi, const Scalar& m, const Scalar& lambda, long N)
{
    require_nonreal(lambda, "the on-circle defect");
    Real sum(model.bits());
    for (long t = model.a(); t <= N; ++t) {
        sum += magnitude_squared(chi, t);
    }
    const Real ratio = m.im() / lambda.im();
    return {Scalar(sum - ratio), sum + abs(ratio)};
}

std::vector<Real> partial_sums(const Trajectory& y)
{
    std::vector<Real> out;
    Real sum(y.precision());
    for (long t = y.a(); t <= y.N(); ++t) {
        sum += magnitude_squared(y, t);
        out.push_back(sum);
    }
    return out;
}

DiscSequence disc_sequence(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N_max)
{
    return run_discs(model, lambda, alpha, N_max).sequence;
}

WeylDisc weyl_disc(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N)
{
    return disc_sequence(model, lambda, alpha, N).discs.back();
}

std::string to_string(GrowthVerdict verdict)
{
    switch (verdict) {
    case GrowthVerdict::bounded:
        return "bounded";
    case GrowthVerdict::divergent:
        return "divergent";
    case GrowthVerdict::undecided:
        break;
    }
    return "undecided";
}

std::string to_string(LimitType verdict)
{
    switch (verdict) {
    case LimitType::LPC:
        return "LPC";
    case LimitType::LCC:
        return "LCC";
    case LimitType::undecided:
        break;
    }
    return "undecided";
}

void ClassifyOptions::validate(long a) const
{
    if (!(rel_tol > 0) || !(divergence_factor > 1) || window < 1) {
        throw ModelError("classifier needs rel_tol > 0, divergence_factor > 1 and window >= 1");
    }
    if (n_max - window < a) {
        throw ModelError("n_max=" + std::to_string(n_max) + " leaves no room for a trailing window of " +
                         std::to_string(window) + " above a=" + std::to_string(a));
    }
}

ClassificationReport classify(const CoefficientSet& model, const Scalar& lambda, const Real& alpha,
                              const ClassifyOptions& options)
{
    options.validate(model.a());
    ClassificationReport report = classify_at(model, lambda, alpha, options);
    if (!options.cross_check) {
        return report;
    }
    const Scalar second = options.cross_check->with_precision(model.bits());
    if (second == lambda) {
        report.cross_check_verdict = report.verdict;
        return report;
    }
    LimitType other = LimitType::undecided;
    try {
        other = classify_at(model, second, alpha, options).verdict;
    } catch (const InadmissibleLambda&) {
        return report;
    }
    report.cross_check_verdict = other;
    if (other != report.verdict && report.verdict != LimitType::undecided) {
        report.guidance = "verdict " + to_string(report.verdict) + " disagrees with " + to_string(other) +
                          " at lambda " + second.to_string(6);
        report.verdict = LimitType::undecided;
        report.l2_solution_count = 0;
    }
    return report;
}

Scalar regular_eigen_residual(const CoefficientSet& model, const Scalar& lambda, const BoundaryAngles& angles, long N)
{
    angles.validate();
    const Bits bits = std::max(model.bits(), angles.alpha.precision());
    const Real alpha = angles.alpha.with_precision(bits);
    const Real beta = angles.beta.with_precision(bits);
    const Trajectory psi = propagate(model, lambda, {Scalar(cos(alpha)), Scalar(sin(alpha))}, N);
    return psi.y1(N + 1) * cos(beta) + psi.qd(N) * sin(beta);
}

}  // namespace mixweyl
