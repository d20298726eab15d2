#pragma once

// Property suites over one coefficient set: every identity the solver relies
// on, evaluated on random inputs from a fixed seed.

#include <cstdint>
#include <string>
#include <vector>

#include "mixweyl/model.hpp"

namespace mixweyl::app {

struct SuiteResult {
    std::string name;
    Real worst;        // largest relative defect seen
    double tolerance;  // pass when worst <= tolerance
    long samples = 0;
    bool pass = false;
    std::string detail;  // where the worst case occurred
};

struct SuiteOptions {
    int random_cases = 100;
    long max_span = 40;  // random N in a..a+max_span
    std::uint64_t seed = 0x6d697877;
    double identity_tolerance = 1e-60;
    double geometry_tolerance = 1e-40;
    long oracle_horizon = 100;
    long disc_horizon = 200;
};

SuiteResult green_suite(const CoefficientSet& model, const SuiteOptions& options);
SuiteResult lagrange_suite(const CoefficientSet& model, const SuiteOptions& options);
SuiteResult wronskian_suite(const CoefficientSet& model, const SuiteOptions& options);
SuiteResult on_circle_suite(const CoefficientSet& model, const SuiteOptions& options);
SuiteResult step_determinant_suite(const CoefficientSet& model, const SuiteOptions& options);
/// Transfer recursion against the three-term oracle at lambda = i and 1+i.
SuiteResult oracle_suite(const CoefficientSet& model, const SuiteOptions& options);
/// Nesting of the discs at lambda = i up to disc_horizon, absolute slack geometry_tolerance.
SuiteResult nesting_suite(const CoefficientSet& model, const SuiteOptions& options);
/// r_N 2 Im(lambda) S_N = 1 at lambda = i up to disc_horizon.
SuiteResult radius_suite(const CoefficientSet& model, const SuiteOptions& options);

std::vector<SuiteResult> run_all_suites(const CoefficientSet& model, const SuiteOptions& options);

}  // namespace mixweyl::app
