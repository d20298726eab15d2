#pragma once

// Sufficient limit-point criteria decided on exact growth classes.
//
// thm51: |c/p| bounded and sum 1/|p| divergent.
// thm52: p > 0 and, against a positive comparison sequence M,
//   1) |c(t)| + |c(t-1)| <= k1 M(t) and |h(t)| <= k2 M(t)
//   2) q(t) >= -k3 M(t)
//   3) sqrt(p(t-1)) |M(t) - M(t-1)| / (sqrt(M(t)) M(t-1)) <= k4
//   4) sum 1 / ((p(t-1)^2 + c(t-1)^2)^(1/4) sqrt(M(t))) diverges.
// Constants are reported as suprema over the finite window; a verdict is
// definite only when the growth classes settle the condition for all large t.

#include <optional>
#include <string>
#include <vector>

#include "mixweyl/expr.hpp"
#include "mixweyl/model.hpp"

namespace mixweyl {

enum class Outcome { holds, fails, unknown };
enum class Criterion { thm51, thm52 };

std::string to_string(Outcome outcome);
std::string to_string(Criterion which);

struct Witness {
    std::string name;  // "K", "k1".."k4", "partial_sum"
    Real value;
};

struct CriterionVerdict {
    Outcome outcome = Outcome::unknown;
    Criterion which = Criterion::thm51;
    long N = 0;  // conditions are checked for t > N
    long horizon = 0;
    std::vector<Witness> witnesses;
    std::optional<int> failing_condition;  // 0 is the sign precondition of thm52
    std::string reason;
};

CriterionVerdict thm51_check(const CoefficientSet& model, long horizon);

/// Throws ModelError when M(t) <= 0 on a..horizon or M is eventually nonpositive.
CriterionVerdict thm52_check(const CoefficientSet& model, const CoefficientExpr& M, long horizon);

}  // namespace mixweyl
