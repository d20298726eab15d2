#include "mixweyl/criteria.hpp"

#include <algorithm>

namespace mixweyl {

namespace {

struct Condition {
    Outcome outcome = Outcome::holds;
    std::string reason;
};

Condition holds() { return {Outcome::holds, {}}; }
Condition fails(std::string reason) { return {Outcome::fails, std::move(reason)}; }
Condition unknown(std::string reason) { return {Outcome::unknown, std::move(reason)}; }

std::optional<Real> sample(const Coefficient& f, long t, const PrecisionConfig& precision)
{
    try {
        return f.at(t, precision);
    } catch (const EvaluationError&) {
        return std::nullopt;
    }
}

// First index from which the growth class keeps its eventual sign.
std::optional<long> sign_settles(const GrowthClass& g, long from)
{
    if (g.is_zero()) {
        return std::nullopt;
    }
    if (g.sqrt_wrapped) {
        return from;
    }
    return dominance_onset(g.inner, from);
}

int compare_rates(const GrowthClass& f, const GrowthClass& g) { return compare(f.rate(), g.rate()); }

void fill_verdict(CriterionVerdict& out, const std::vector<Condition>& conditions, int first_index)
{
    std::string unknowns;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        const Condition& c = conditions[i];
        if (c.outcome == Outcome::fails) {
            out.outcome = Outcome::fails;
            out.failing_condition = first_index + static_cast<int>(i);
            out.reason = c.reason;
            return;
        }
        if (c.outcome == Outcome::unknown) {
            unknowns += (unknowns.empty() ? "" : "; ") + c.reason;
        }
    }
    out.outcome = unknowns.empty() ? Outcome::holds : Outcome::unknown;
    out.reason = unknowns;
}

Real sup_or_zero(const std::vector<Real>& values, Bits bits)
{
    Real best(bits);
    for (const Real& v : values) {
        best = max(best, v);
    }
    return best;
}

}  // namespace

std::string to_string(Outcome outcome)
{
    switch (outcome) {
    case Outcome::holds:
        return "holds";
    case Outcome::fails:
        return "fails";
    case Outcome::unknown:
        break;
    }
    return "unknown";
}

std::string to_string(Criterion which) { return which == Criterion::thm51 ? "thm51" : "thm52"; }

CriterionVerdict thm51_check(const CoefficientSet& model, long horizon)
{
    const long a = model.a();
    const Bits bits = model.bits();
    CriterionVerdict out;
    out.which = Criterion::thm51;
    out.N = a;
    out.horizon = horizon;

    std::vector<Real> ratios;
    Real reciprocal_sum(bits);
    for (long t = a; t <= horizon; ++t) {
        const auto p = sample(model.p(), t, model.precision());
        const auto c = sample(model.c(), t, model.precision());
        if (!p || !c || p->is_zero()) {
            break;
        }
        ratios.push_back(abs(*c / *p));
        reciprocal_sum += Real(1, bits) / abs(*p);
    }
    out.witnesses.push_back({"K", sup_or_zero(ratios, bits)});
    out.witnesses.push_back({"partial_sum", reciprocal_sum});

    const auto& pg = model.p().growth();
    const auto& cg = model.c().growth();
    Condition bounded;
    if (model.c().is_identically_zero()) {
        bounded = holds();
    } else if (!pg || !cg || pg->is_zero()) {
        bounded = unknown("|c/p| bound needs recognized growth classes for p and c");
    } else if (compare_rates(*cg, *pg) > 0) {
        bounded = fails("c grows like " + cg->rate().to_string() + ", faster than p");
    } else {
        bounded = holds();
    }

    Condition divergent;
    if (!pg || pg->is_zero()) {
        divergent = unknown("divergence of sum 1/|p| needs a recognized growth class for p");
    } else if (series_diverges(pg->rate().reciprocal())) {
        divergent = holds();
    } else {
        divergent = fails("sum 1/|p| converges: 1/|p| decays like " + pg->rate().reciprocal().to_string());
    }
    fill_verdict(out, {bounded, divergent}, 1);
    return out;
}

CriterionVerdict thm52_check(const CoefficientSet& model, const CoefficientExpr& M, long horizon)
{
    const long a = model.a();
    const Bits bits = model.bits();
    const PrecisionConfig& precision = model.precision();
    const Coefficient m_coef(M);
    const auto& mg = m_coef.growth();

    long m_check_until = horizon;
    if (mg) {
        if (mg->eventual_sign() <= 0) {
            throw ModelError("comparison sequence M = " + M.to_string() + " is not eventually positive");
        }
        const auto settled = sign_settles(*mg, a);
        if (!settled) {
            throw ModelError("positivity of M = " + M.to_string() + " could not be settled");
        }
        m_check_until = std::max(horizon, *settled);
    }
    for (long t = a; t <= m_check_until; ++t) {
        const Real v = eval_coefficient(M, t, precision);
        if (v.sign() <= 0) {
            throw ModelError("M(" + std::to_string(t) + ") = " + v.to_string(6) + " is not positive");
        }
    }

    CriterionVerdict out;
    out.which = Criterion::thm52;
    out.N = a;
    out.horizon = horizon;

    // Sign precondition.
    Condition positive = holds();
    const auto& pg = model.p().growth();
    long p_check_until = horizon;
    if (pg) {
        if (pg->eventual_sign() <= 0) {
            positive = fails("p is eventually nonpositive");
        } else if (const auto settled = sign_settles(*pg, a)) {
            p_check_until = std::max(horizon, *settled);
        } else {
            positive = unknown("eventual sign of p could not be settled");
        }
    } else {
        positive = unknown("p > 0 beyond the sampled window needs a recognized growth class");
    }
    for (long t = a; t <= p_check_until && positive.outcome != Outcome::fails; ++t) {
        const auto p = sample(model.p(), t, precision);
        if (!p) {
            break;
        }
        if (p->sign() <= 0) {
            positive = fails("p(" + std::to_string(t) + ") = " + p->to_string(6) + " is not positive");
        }
    }
    if (positive.outcome == Outcome::fails) {
        fill_verdict(out, {positive}, 0);
        return out;
    }

    // Witness constants over t = a+1..horizon.
    std::vector<Real> k1, k2, k3, k4;
    Real series(bits);
    for (long t = a + 1; t <= horizon; ++t) {
        const auto p_prev = sample(model.p(), t - 1, precision);
        const auto c = sample(model.c(), t, precision);
        const auto c_prev = sample(model.c(), t - 1, precision);
        const auto h = sample(model.h(), t, precision);
        const auto q = sample(model.q(), t, precision);
        if (!p_prev || !c || !c_prev || !h || !q) {
            break;
        }
        const Real m = eval_coefficient(M, t, precision);
        const Real m_prev = eval_coefficient(M, t - 1, precision);
        k1.push_back((abs(*c) + abs(*c_prev)) / m);
        k2.push_back(abs(*h) / m);
        k3.push_back(max(Real(bits), -*q / m));
        k4.push_back(sqrt(*p_prev) * abs(m - m_prev) / (sqrt(m) * m_prev));
        const Real base = *p_prev * *p_prev + *c_prev * *c_prev;
        series += Real(1, bits) / (sqrt(sqrt(base)) * sqrt(m));
    }
    out.witnesses.push_back({"k1", sup_or_zero(k1, bits)});
    out.witnesses.push_back({"k2", sup_or_zero(k2, bits)});
    out.witnesses.push_back({"k3", sup_or_zero(k3, bits)});
    out.witnesses.push_back({"k4", sup_or_zero(k4, bits)});
    out.witnesses.push_back({"partial_sum", series});

    const auto& cg = model.c().growth();
    const auto& hg = model.h().growth();
    const auto& qg = model.q().growth();

    auto dominated = [&](const Coefficient& f, const std::optional<GrowthClass>& g, const char* name) {
        if (f.is_identically_zero()) {
            return holds();
        }
        if (!g || !mg) {
            return unknown(std::string("bound on |") + name + "| / M needs recognized growth classes");
        }
        if (compare_rates(*g, *mg) > 0) {
            return fails(std::string(name) + " grows like " + g->rate().to_string() + ", faster than M");
        }
        return holds();
    };
    Condition cond1 = dominated(model.c(), cg, "c");
    if (cond1.outcome == Outcome::holds) {
        cond1 = dominated(model.h(), hg, "h");
    }

    Condition cond2;
    if (model.q().is_identically_zero()) {
        cond2 = holds();
    } else if (!qg) {
        cond2 = unknown("lower bound on q / M needs a recognized growth class for q");
    } else if (qg->eventual_sign() > 0) {
        cond2 = holds();
    } else if (!mg) {
        cond2 = unknown("lower bound on q / M needs a recognized growth class for M");
    } else if (compare_rates(*qg, *mg) > 0) {
        cond2 = fails("q is eventually negative and grows like " + qg->rate().to_string() + ", faster than M");
    } else {
        cond2 = holds();
    }

    Condition cond3;
    if (!mg || mg->sqrt_wrapped) {
        cond3 = unknown("the backward difference of M needs M as an exponential polynomial");
    } else {
        const ExpPoly nabla = mg->inner - mg->inner.shift(1);
        if (nabla.is_zero()) {
            cond3 = holds();
        } else if (!pg) {
            cond3 = unknown("condition 3 needs a recognized growth class for p");
        } else {
            const GrowthClass nabla_class{nabla, false, 1};
            const Rate ratio = pg->rate().nth_root(2) * nabla_class.rate() / (mg->rate().nth_root(2) * mg->rate());
            cond3 = compare(ratio, Rate::one()) <= 0
                        ? holds()
                        : fails("sqrt(p) |nabla M| / (sqrt(M) M) grows like " + ratio.to_string());
        }
    }

    Condition cond4;
    if (!pg || !mg || (!model.c().is_identically_zero() && !cg)) {
        cond4 = unknown("divergence of the condition-4 series needs recognized growth classes");
    } else {
        ExpPoly base = pg->square();
        if (!model.c().is_identically_zero()) {
            base = base + cg->square();
        }
        const GrowthClass base_class{base, false, 1};
        const Rate term = (base_class.rate().nth_root(4) * mg->rate().nth_root(2)).reciprocal();
        cond4 = series_diverges(term) ? holds() : fails("series terms decay like " + term.to_string());
    }

    fill_verdict(out, {positive, cond1, cond2, cond3, cond4}, 0);
    return out;
}

}  // namespace mixweyl
