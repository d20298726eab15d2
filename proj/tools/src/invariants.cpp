#include "mixweyl/app/invariants.hpp"

#include <random>
#include <sstream>

#include "mixweyl/recurrence.hpp"
#include "mixweyl/structure.hpp"
#include "mixweyl/weyl.hpp"

namespace mixweyl::app {

namespace {

class Sampler {
public:
    Sampler(std::uint64_t seed, const std::string& salt, Bits bits)
        : rng_(seed ^ std::hash<std::string>{}(salt)), bits_(bits) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    Real real(double lo, double hi) { return Real::from_double(uniform(lo, hi), bits_); }
    Scalar scalar() { return {real(-1, 1), real(-1, 1)}; }
    /// Nonreal lambda in the upper half-plane.
    Scalar lambda() { return {real(-2, 2), real(0.1, 2)}; }
    /// Angle in [0, pi).
    Real angle() { return real(0, 3.14159); }

private:
    std::mt19937_64 rng_;
    Bits bits_;
};

struct Tracker {
    SuiteResult result;

    Tracker(std::string name, Bits bits, double tolerance) : result{std::move(name), Real(bits), tolerance, 0, false, {}} {}

    void record(const Real& value, const std::string& where)
    {
        ++result.samples;
        if (result.samples == 1 || !value.is_finite() || value > result.worst) {
            result.worst = value;
            result.detail = where;
        }
    }

    SuiteResult finish()
    {
        result.pass = result.worst.is_finite() && result.worst.to_double() <= result.tolerance;
        return std::move(result);
    }
};

std::string describe(const char* what, const Scalar& lambda, long N)
{
    std::ostringstream out;
    out << what << " lambda=" << lambda.to_string(6) << " N=" << N;
    return out.str();
}

}  // namespace

SuiteResult green_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Sampler rng(options.seed, "green", model.bits());
    Tracker track("green_formula", model.bits(), options.identity_tolerance);
    const long a = model.a();
    for (int k = 0; k < options.random_cases; ++k) {
        const long N = rng.integer(a, a + options.max_span);
        auto random_sequence = [&] {
            std::vector<Scalar> y1;
            std::vector<Scalar> y2;
            for (long t = a - 1; t <= N + 1; ++t) {
                y1.push_back(rng.scalar());
                if (t <= N) {
                    y2.push_back(rng.scalar());
                }
            }
            return Sequence(a, N, std::move(y1), std::move(y2));
        };
        const Sequence y = random_sequence();
        const Sequence z = random_sequence();
        track.record(green_defect(model, y, z, N).relative(), "case " + std::to_string(k) + " N=" + std::to_string(N));
    }
    return track.finish();
}

SuiteResult lagrange_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Sampler rng(options.seed, "lagrange", model.bits());
    Tracker track("lagrange_identity", model.bits(), options.identity_tolerance);
    for (int k = 0; k < options.random_cases; ++k) {
        const long N = rng.integer(model.a(), model.a() + options.max_span);
        const Scalar lambda = rng.lambda();
        const Scalar mu = rng.lambda();
        const Trajectory phi = propagate(model, lambda, {rng.scalar(), rng.scalar()}, N);
        const Trajectory psi = propagate(model, mu, {rng.scalar(), rng.scalar()}, N);
        track.record(lagrange_identity_defect(model, phi, psi, N).relative(), describe("case", lambda, N));
    }
    return track.finish();
}

SuiteResult wronskian_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Sampler rng(options.seed, "wronskian", model.bits());
    Tracker track("wronskian_unit", model.bits(), options.identity_tolerance);
    const Scalar one = Scalar::one(model.bits());
    for (int k = 0; k < options.random_cases; ++k) {
        const long N = rng.integer(model.a(), model.a() + options.max_span);
        const Scalar lambda = rng.lambda();
        const FundamentalPair pair = fundamental_pair(model, lambda, rng.angle(), N);
        Real worst(model.bits());
        for (long t = model.a() - 1; t <= N; ++t) {
            worst = max(worst, wronskian_defect(pair.phi, pair.psi, t, one).relative());
        }
        track.record(worst, describe("case", lambda, N));
    }
    return track.finish();
}

SuiteResult on_circle_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Sampler rng(options.seed, "circle", model.bits());
    Tracker track("on_circle", model.bits(), options.identity_tolerance);
    for (int k = 0; k < options.random_cases; ++k) {
        const long N = rng.integer(model.a(), model.a() + options.max_span);
        const Scalar lambda = rng.lambda();
        const Real alpha = rng.angle();
        const Real beta = rng.angle();
        const FundamentalPair pair = fundamental_pair(model, lambda, alpha, N);
        const CornerValues corner = corner_values(pair, N);
        const Trajectory chi = chi_on_circle(model, pair, corner, cot_or_infinity(beta));
        const Scalar m = m_from_chi(chi, pair.alpha);
        track.record(on_circle_defect(model, chi, m, lambda, N).relative(), describe("case", lambda, N));
    }
    return track.finish();
}

SuiteResult step_determinant_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Sampler rng(options.seed, "determinant", model.bits());
    Tracker track("step_determinant", model.bits(), options.identity_tolerance);
    for (int k = 0; k < options.random_cases; ++k) {
        const long t = rng.integer(model.a(), model.a() + options.oracle_horizon);
        const Scalar lambda = rng.lambda();
        track.record(step_matrix(model, t, lambda).determinant_defect().relative(), describe("case", lambda, t));
    }
    return track.finish();
}

SuiteResult oracle_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Sampler rng(options.seed, "oracle", model.bits());
    Tracker track("three_term_oracle", model.bits(), options.identity_tolerance);
    const Bits bits = model.bits();
    const long N = model.a() + options.oracle_horizon;
    for (const Scalar& lambda : {Scalar::i(bits), Scalar::from_longs(1, 1, bits)}) {
        std::vector<BoundaryData> data = {{Scalar::one(bits), Scalar::zero(bits)},
                                          {Scalar::zero(bits), -Scalar::one(bits)}};
        for (int k = 0; k < 8; ++k) {
            data.push_back({rng.scalar(), rng.scalar()});
        }
        for (const BoundaryData& bd : data) {
            const Trajectory fast = propagate(model, lambda, bd, N);
            const Trajectory slow = oracle_three_term(model, lambda, bd, N);
            track.record(max_relative_deviation(fast, slow, N), describe("boundary data", lambda, N));
        }
    }
    return track.finish();
}

SuiteResult nesting_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Tracker track("disc_nesting", model.bits(), options.geometry_tolerance);
    const Bits bits = model.bits();
    const DiscSequence seq = disc_sequence(model, Scalar::i(bits), Real(0, bits), model.a() + options.disc_horizon);
    const auto& discs = seq.discs;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        Real worst(bits);
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            const Real excess = (discs[j].center - discs[i].center).abs() - (discs[i].radius - discs[j].radius);
            worst = max(worst, excess);
        }
        track.record(worst, "N=" + std::to_string(discs[i].N));
    }
    return track.finish();
}

SuiteResult radius_suite(const CoefficientSet& model, const SuiteOptions& options)
{
    Tracker track("radius_identity", model.bits(), options.geometry_tolerance);
    const Bits bits = model.bits();
    const Scalar lambda = Scalar::i(bits);
    const DiscSequence seq = disc_sequence(model, lambda, Real(0, bits), model.a() + options.disc_horizon);
    for (const WeylDisc& d : seq.discs) {
        track.record(abs(d.radius * d.S * lambda.im() * 2 - 1), "N=" + std::to_string(d.N));
    }
    return track.finish();
}

std::vector<SuiteResult> run_all_suites(const CoefficientSet& model, const SuiteOptions& options)
{
    return {green_suite(model, options),           lagrange_suite(model, options), wronskian_suite(model, options),
            on_circle_suite(model, options),       step_determinant_suite(model, options),
            oracle_suite(model, options),          nesting_suite(model, options),  radius_suite(model, options)};
}

}  // namespace mixweyl::app
