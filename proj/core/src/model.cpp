#include "mixweyl/model.hpp"

#include <cmath>

namespace mixweyl {

namespace {

const char* coef_name(Coef which)
{
    static constexpr const char* names[] = {"p", "q", "c", "h", "d"};
    return names[static_cast<std::size_t>(which)];
}

// Exact decision of inf_{t >= from} |target - f(t)| > 0; nullopt when undecidable.
std::optional<bool> inf_gap_positive(const ExpPoly& f, const Real& target, long from)
{
    const Bits bits = target.precision();
    if (auto v = f.constant_value()) {
        return Real::from_rational(*v, bits) != target;
    }
    auto window_positive = [&](long until) {
        for (long t = from; t < until; ++t) {
            if (f.evaluate(t, bits) == target) {
                return false;
            }
        }
        return true;
    };
    const ExpTerm& dom = f.dominant();
    if (dom.base > 1 || (dom.base == 1 && dom.degree > 0)) {
        const auto beyond = exceeds_from(f, std::fabs(target.to_double()) + 1.0, from);
        if (!beyond) {
            return std::nullopt;
        }
        return window_positive(*beyond);
    }
    // Remaining case: f tends to a finite limit L, the (1, 0) term or 0.
    mpq_class limit = 0;
    ExpPoly tail = f;
    if (dom.base == 1 && dom.degree == 0) {
        limit = dom.coeff;
        tail = f - ExpPoly::constant(limit);
    }
    const Real gap = abs(target - Real::from_rational(limit, bits));
    if (gap.is_zero()) {
        return false;
    }
    const auto settled = decay_below(tail, gap.to_double() / 2.0, from);
    if (!settled) {
        return std::nullopt;
    }
    return window_positive(*settled);
}

std::optional<bool> inf_gap_positive(const GrowthClass& f, const Real& target, long from)
{
    if (!f.sqrt_wrapped) {
        return inf_gap_positive(f.inner, target, from);
    }
    if (!target.is_zero() && target.sign() != f.sign) {
        return true;
    }
    return inf_gap_positive(f.inner, target * target, from);
}

}  // namespace

Coefficient::Coefficient(CoefficientExpr expr) : source_(std::move(expr))
{
    growth_ = asymptotic_class(std::get<CoefficientExpr>(source_));
}

Coefficient::Coefficient(CoefficientTable table) : source_(std::move(table)) {}

Real Coefficient::at(long t, const PrecisionConfig& precision) const
{
    if (const auto* e = expr()) {
        return eval_coefficient(*e, t, precision);
    }
    const auto& tab = *table();
    if (t < tab.start || t > tab.end()) {
        throw EvaluationError("table coefficient has no value at t=" + std::to_string(t) + " (declared range " +
                              std::to_string(tab.start) + ".." + std::to_string(tab.end()) + ")");
    }
    Real value = Real::from_rational(tab.values[static_cast<std::size_t>(t - tab.start)], precision.bits());
    check_range(value, precision, "table value");
    return value;
}

bool Coefficient::is_identically_zero() const
{
    if (const auto* e = expr()) {
        return e->is_literal_zero() || (growth_ && growth_->is_zero());
    }
    for (const mpq_class& v : table()->values) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

std::string Coefficient::describe() const
{
    if (const auto* e = expr()) {
        return e->to_string();
    }
    return "table[" + std::to_string(table()->start) + ".." + std::to_string(table()->end()) + "]";
}

CoefficientSet::CoefficientSet(long a, Coefficient p, Coefficient q, Coefficient c, Coefficient h, Coefficient d,
                               PrecisionConfig precision)
    : a_(a), coeffs_{std::move(p), std::move(q), std::move(c), std::move(h), std::move(d)}, precision_(precision)
{
    precision_.validate();
}

CoefficientSet CoefficientSet::with_precision(const PrecisionConfig& precision) const
{
    CoefficientSet out = *this;
    precision.validate();
    out.precision_ = precision;
    return out;
}

CoefficientSet CoefficientSet::with_bits(Bits bits) const { return with_precision(PrecisionConfig::big(bits)); }

Real CoefficientSet::value(Coef which, long t) const
{
    if (t < a_ - 1) {
        throw ModelError(std::string(coef_name(which)) + " requested at t=" + std::to_string(t) + " below the grid start " +
                         std::to_string(a_ - 1));
    }
    Real v = coefficient(which).at(t, precision_);
    if (which == Coef::p && v.is_zero()) {
        throw ModelError("p(" + std::to_string(t) + ") = 0");
    }
    return v;
}

CoefficientValues CoefficientSet::values_at(long t) const
{
    return {value(Coef::p, t), value(Coef::q, t), value(Coef::c, t), value(Coef::h, t), value(Coef::d, t)};
}

Real CoefficientSet::script_m(long t) const
{
    const Real p = value(Coef::p, t);
    const Real c = value(Coef::c, t);
    const Real h = value(Coef::h, t);
    return value(Coef::d, t) - (c * c - h * c) / p;
}

std::optional<GrowthClass> CoefficientSet::script_m_class() const
{
    const auto& pg = p().growth();
    const auto& cg = c().growth();
    const auto& hg = h().growth();
    const auto& dg = d().growth();
    if (!pg || !cg || !hg || !dg) {
        return std::nullopt;
    }
    ExpPoly hc;
    if (!cg->is_zero() && !hg->is_zero()) {
        if (cg->sqrt_wrapped || hg->sqrt_wrapped) {
            return std::nullopt;
        }
        hc = hg->inner * cg->inner;
    }
    const ExpPoly numerator = cg->square() - hc;
    if (numerator.is_zero()) {
        return dg;
    }
    const auto p_poly = pg->as_poly();
    if (!p_poly || !p_poly->is_single_term() || p_poly->dominant().degree != 0 || !dg->as_poly()) {
        return std::nullopt;
    }
    const ExpTerm& pt = p_poly->dominant();
    mpq_class inv_base = 1 / pt.base;
    inv_base.canonicalize();
    const ExpPoly correction = numerator * ExpPoly::term(1 / pt.coeff, inv_base, 0);
    return GrowthClass{*dg->as_poly() - correction, false, 1};
}

DerivedSample derived_at(const CoefficientSet& model, long t, const Scalar& lambda)
{
    const CoefficientValues v = model.values_at(t);
    const Scalar gap = lambda - v.d;
    if (gap.is_zero()) {
        throw DivisionByZero("lambda equals d(" + std::to_string(t) + ")");
    }
    DerivedSample s;
    s.t = t;
    s.alpha = (v.h * v.c) / gap;
    s.p_tilde = (v.c * v.c - v.h * v.c) / gap + v.p;
    s.H = (v.h * v.h) / gap + v.q - lambda;
    s.M_script = Scalar(v.d - (v.c * v.c - v.h * v.c) / v.p);
    if (t >= model.a()) {
        const Real c_prev = model.value(Coef::c, t - 1);
        const Real h_prev = model.value(Coef::h, t - 1);
        const Scalar gap_prev = lambda - model.value(Coef::d, t - 1);
        if (gap_prev.is_zero()) {
            throw DivisionByZero("lambda equals d(" + std::to_string(t - 1) + ")");
        }
        const Scalar alpha_prev = (h_prev * c_prev) / gap_prev;
        s.q_tilde = (v.h * v.h) / gap + v.q - (s.alpha - alpha_prev);
    }
    return s;
}

Real spectral_distance(const CoefficientSet& model, const Scalar& lambda, long t)
{
    const Real d = model.value(Coef::d, t);
    const Real m = model.script_m(t);
    return min((lambda - d).abs(), (lambda - m).abs());
}

SpectralPoint spectral_gap(const CoefficientSet& model, const Scalar& lambda, long horizon)
{
    if (horizon < model.a()) {
        throw ModelError("spectral_gap horizon " + std::to_string(horizon) + " is below a=" + std::to_string(model.a()));
    }
    SpectralPoint point{lambda, Real(model.bits()), false, false};
    bool first = true;
    for (long t = model.a() - 1; t <= horizon; ++t) {
        Real dist = spectral_distance(model, lambda, t);
        if (first || dist < point.margin) {
            point.margin = std::move(dist);
            first = false;
        }
    }
    if (!lambda.is_real()) {
        // d and M are real, so |lambda - f(t)| >= |Im lambda| for every t.
        point.decided_symbolically = true;
        point.positive_everywhere = true;
        return point;
    }
    const auto& dg = model.d().growth();
    const auto mg = model.script_m_class();
    if (!dg || !mg) {
        return point;
    }
    const auto d_ok = inf_gap_positive(*dg, lambda.re(), model.a() - 1);
    const auto m_ok = inf_gap_positive(*mg, lambda.re(), model.a() - 1);
    if ((d_ok && !*d_ok) || (m_ok && !*m_ok)) {
        point.decided_symbolically = true;
        point.positive_everywhere = false;
    } else if (d_ok && m_ok) {
        point.decided_symbolically = true;
        point.positive_everywhere = true;
    }
    return point;
}

PerturbationSplit split_perturbation(const CoefficientSet& model)
{
    const Coefficient zero(CoefficientExpr::constant(0));
    CoefficientSet diagonal(model.a(), model.p(), model.q(), zero, zero, model.d(), model.precision());
    return {std::move(diagonal), model.c(), model.h(), model.c().is_identically_zero() && model.h().is_identically_zero()};
}

}  // namespace mixweyl
