// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mixweyl/app/invariants.hpp"
#include "mixweyl/app/scenario.hpp"
#include "mixweyl/criteria.hpp"
#include "mixweyl/recurrence.hpp"
#include "mixweyl/structure.hpp"
#include "mixweyl/weyl.hpp"

using namespace mixweyl;

namespace {

constexpr Bits kBits = 256;

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
        }
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [failed]");
    }
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

CoefficientSet builtin_model(const std::string& name) { return app::builtin_scenario(name).model(); }

/// Classification at lambda = i, alpha, n_max = 200, 256 bits.
LimitType verdict_of(const std::string& name, const Real& alpha, double* seconds = nullptr)
{
    const auto start = std::chrono::steady_clock::now();
    const ClassificationReport r = classify(builtin_model(name), Scalar::i(kBits), alpha, ClassifyOptions{});
    if (seconds) {
        *seconds = seconds_since(start);
    }
    return r.verdict;
}

void check_verdict(Check& out, const std::string& name, LimitType expected)
{
    double seconds = 0;
    const LimitType got = verdict_of(name, Real(0, kBits), &seconds);
    out.require(got == expected, name + " -> " + to_string(got) + " (expected " + to_string(expected) + ")");
    out.require(seconds < 10.0, name + " took " + sci(seconds) + " s");
}

void example_verdicts_first(Check& out)
{
    check_verdict(out, "ex4.1a", LimitType::LCC);
    check_verdict(out, "ex4.1b", LimitType::LPC);
}

void example_verdicts_second(Check& out)
{
    check_verdict(out, "ex4.2a", LimitType::LPC);
    check_verdict(out, "ex4.2b", LimitType::LCC);
    const CoefficientSet model = builtin_model("ex4.2a");
    const CriterionVerdict sum = thm51_check(model, 200);
    const CriterionVerdict comparison = thm52_check(model, CoefficientExpr::parse("1"), 200);
    out.require(sum.outcome == Outcome::holds, "ex4.2a thm51 " + to_string(sum.outcome));
    out.require(comparison.outcome == Outcome::holds, "ex4.2a thm52(M=1) " + to_string(comparison.outcome));
    const bool predicts_lpc = sum.outcome == Outcome::holds || comparison.outcome == Outcome::holds;
    out.require(!predicts_lpc || verdict_of("ex4.2a", Real(0, kBits)) == LimitType::LPC,
                "criteria agree with the classifier");
}

void identity_suites(Check& out)
{
    const auto start = std::chrono::steady_clock::now();
    app::SuiteOptions options;
    options.random_cases = 100;
    options.identity_tolerance = 1e-60;
    using Suite = std::function<app::SuiteResult(const CoefficientSet&, const app::SuiteOptions&)>;
    const std::vector<Suite> suites = {app::green_suite, app::lagrange_suite, app::on_circle_suite, app::wronskian_suite,
                                       app::step_determinant_suite};
    for (const std::string& name : app::builtin_names()) {
        const CoefficientSet model = builtin_model(name);
        for (const Suite& suite : suites) {
            const app::SuiteResult r = suite(model, options);
            if (!r.pass) {
                out.require(false, name + " " + r.name + " worst " + r.worst.to_string(3) + " at " + r.detail);
            }
        }
    }
    const double seconds = seconds_since(start);
    out.require(true, "5 scenarios x 5 identities x 100 cases within 1e-60");
    out.require(seconds < 30.0, "runtime " + sci(seconds) + " s");
}

void oracle_equivalence(Check& out)
{
    app::SuiteOptions options;
    options.oracle_horizon = 100;
    options.identity_tolerance = 1e-60;
    for (const std::string& name : app::builtin_names()) {
        const app::SuiteResult r = app::oracle_suite(builtin_model(name), options);
        out.require(r.pass, name + " worst " + r.worst.to_string(3));
    }
}

void disc_geometry(Check& out)
{
    const CoefficientSet free = builtin_model("free");
    const Scalar lambda = Scalar::i(kBits);
    // Corner values from the three-term oracle, disc from the bracket formulas.
    const Trajectory phi = oracle_three_term(free, lambda, {Scalar::zero(kBits), -Scalar::one(kBits)}, 0);
    const Trajectory psi = oracle_three_term(free, lambda, {Scalar::one(kBits), Scalar::zero(kBits)}, 0);
    const Scalar A = phi.y1(1), B = phi.qd(0), C = psi.y1(1), D = psi.qd(0);
    const Scalar den = C * D.conj() - C.conj() * D;
    const Scalar oracle_center = -(A * D.conj() - B * C.conj()) / den;
    const Real oracle_radius = Real(1, kBits) / den.abs();
    const WeylDisc disc = weyl_disc(free, lambda, Real(0, kBits), 0);
    const double center_gap = (disc.center - oracle_center).abs().to_double();
    const double radius_gap = abs(disc.radius - oracle_radius).to_double();
    out.require(center_gap < 1e-12 && radius_gap < 1e-12,
                "free N=0 center " + disc.center.to_string(6) + " radius " + disc.radius.to_string(6));
    out.require((oracle_center - Scalar(Real(0, kBits), Real(1, kBits) / 2)).abs().to_double() < 1e-12 &&
                    abs(oracle_radius - Real(1, kBits) / 2).to_double() < 1e-12,
                "oracle disc is (i/2, 1/2)");

    app::SuiteOptions options;
    options.disc_horizon = 200;
    options.geometry_tolerance = 1e-40;
    double worst_nesting = 0;
    double worst_radius = 0;
    for (const std::string& name : app::builtin_names()) {
        const CoefficientSet model = builtin_model(name);
        const app::SuiteResult nesting = app::nesting_suite(model, options);
        const app::SuiteResult radius = app::radius_suite(model, options);
        worst_nesting = std::max(worst_nesting, nesting.worst.to_double());
        worst_radius = std::max(worst_radius, radius.worst.to_double());
        if (!nesting.pass) {
            out.require(false, name + " nesting excess " + nesting.worst.to_string(3) + " at " + nesting.detail);
        }
        if (!radius.pass) {
            out.require(false, name + " radius identity " + radius.worst.to_string(3) + " at " + radius.detail);
        }
    }
    out.require(true, "nesting excess max " + sci(worst_nesting) + ", radius identity max " + sci(worst_radius));
}

void regular_eigenvalue(Check& out)
{
    const CoefficientSet free = builtin_model("free");
    const BoundaryAngles angles{Real(0, kBits), Real(0, kBits)};
    const Real at_one = regular_eigen_residual(free, Scalar::one(kBits), angles, 0).abs();
    const Real at_i = regular_eigen_residual(free, Scalar::i(kBits), angles, 0).abs();
    out.require(at_one.to_double() < 1e-40, "|U2| at lambda=1 is " + at_one.to_string(3));
    out.require(at_i.sign() > 0, "|U2| at lambda=i is " + at_i.to_string(6));
}

void variation_of_parameters(Check& out)
{
    for (const std::string& name : {std::string("free"), std::string("ex4.1a")}) {
        const CoefficientSet model = builtin_model(name);
        const FundamentalPair pair = fundamental_pair(model, Scalar::i(kBits), Real(0, kBits), 20);
        const Trajectory z = propagate(model, Scalar::from_longs(0, 2, kBits), {Scalar::one(kBits), Scalar::zero(kBits)}, 20);
        double worst = 0;
        for (long t_check = 6; t_check <= 20; ++t_check) {
            const VopResult r = vop_reconstruct(model, pair.phi, pair.psi, z, 3, t_check);
            worst = std::max({worst, r.first.relative().to_double(), r.second.relative().to_double()});
        }
        out.require(worst < 1e-50, name + " worst " + sci(worst));
    }
}

void alpha_invariance(Check& out)
{
    const Real pi = Real::pi(kBits);
    for (const std::string& name : app::builtin_names()) {
        const LimitType base = verdict_of(name, Real(0, kBits));
        const LimitType quarter = verdict_of(name, pi / 4);
        const LimitType half = verdict_of(name, pi / 2);
        out.require(base == quarter && base == half,
                    name + " " + to_string(base) + "/" + to_string(quarter) + "/" + to_string(half));
    }
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"1 first example pair verdicts", example_verdicts_first},
        {"2 second example pair verdicts and criteria", example_verdicts_second},
        {"3 identity suite", identity_suites},
        {"4 oracle equivalence", oracle_equivalence},
        {"5 disc geometry", disc_geometry},
        {"6 regular eigenvalue residual", regular_eigenvalue},
        {"7 variation of parameters", variation_of_parameters},
        {"8 boundary angle invariance", alpha_invariance},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check out;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("threw: ") + e.what());
        }
        std::printf("%s criterion %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(start),
                    out.detail.str().c_str());
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    return failures;
}
