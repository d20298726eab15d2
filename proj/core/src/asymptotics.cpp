#include "mixweyl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace mixweyl {

namespace {

mpq_class power(const mpq_class& base, long exponent)
{
    mpz_class num;
    mpz_class den;
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    mpq_class out = exponent < 0 ? mpq_class(den, num) : mpq_class(num, den);
    out.canonicalize();
    return out;
}

mpz_class binomial(unsigned n, unsigned k)
{
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

double log_abs(const mpq_class& value)
{
    long num_exp = 0;
    long den_exp = 0;
    const double num = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
    const double den = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
    return std::log(std::fabs(num)) - std::log(den) + static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

// First t >= lo with pred(t), given pred is monotone (false ... false true ...).
std::optional<long> first_true(long lo, long limit, const std::function<bool(long)>& pred)
{
    if (lo > limit) {
        return std::nullopt;
    }
    if (pred(lo)) {
        return lo;
    }
    long bad = lo;
    long step = 1;
    long good = -1;
    while (good < 0) {
        const long probe = bad + step > limit ? limit : bad + step;
        if (pred(probe)) {
            good = probe;
        } else if (probe == limit) {
            return std::nullopt;
        } else {
            bad = probe;
            step *= 2;
        }
    }
    while (good - bad > 1) {
        const long mid = bad + (good - bad) / 2;
        (pred(mid) ? good : bad) = mid;
    }
    return good;
}

// Smallest t >= 1 from which |c| q^t t^m is nonincreasing (q <= 1).
long monotone_from(const mpq_class& q, long m)
{
    if (m <= 0 || q >= 1) {
        return 1;
    }
    const double lq = -log_abs(q);  // > 0
    const double threshold = 1.0 / std::expm1(lq / static_cast<double>(m));
    return static_cast<long>(std::ceil(threshold)) + 1;
}

}  // namespace

ExpPoly ExpPoly::constant(const mpq_class& value) { return term(value, 1, 0); }

ExpPoly ExpPoly::variable() { return term(1, 1, 1); }

ExpPoly ExpPoly::term(const mpq_class& coeff, const mpq_class& base, unsigned degree)
{
    ExpPoly out;
    out.terms_.push_back({coeff, base, degree});
    out.normalize();
    return out;
}

void ExpPoly::normalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const ExpTerm& x, const ExpTerm& y) {
        if (x.base != y.base) {
            return x.base > y.base;
        }
        return x.degree > y.degree;
    });
    std::vector<ExpTerm> merged;
    for (const ExpTerm& term : terms_) {
        if (!merged.empty() && merged.back().base == term.base && merged.back().degree == term.degree) {
            merged.back().coeff += term.coeff;
        } else {
            merged.push_back(term);
        }
    }
    std::erase_if(merged, [](const ExpTerm& term) { return term.coeff == 0; });
    terms_ = std::move(merged);
}

std::optional<mpq_class> ExpPoly::constant_value() const
{
    if (terms_.empty()) {
        return mpq_class(0);
    }
    if (terms_.size() == 1 && terms_[0].base == 1 && terms_[0].degree == 0) {
        return terms_[0].coeff;
    }
    return std::nullopt;
}

ExpPoly ExpPoly::operator-() const
{
    ExpPoly out = *this;
    for (ExpTerm& term : out.terms_) {
        term.coeff = -term.coeff;
    }
    return out;
}

ExpPoly operator+(const ExpPoly& lhs, const ExpPoly& rhs)
{
    ExpPoly out = lhs;
    out.terms_.insert(out.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    out.normalize();
    return out;
}

ExpPoly operator-(const ExpPoly& lhs, const ExpPoly& rhs) { return lhs + (-rhs); }

ExpPoly operator*(const ExpPoly& lhs, const ExpPoly& rhs)
{
    ExpPoly out;
    for (const ExpTerm& x : lhs.terms_) {
        for (const ExpTerm& y : rhs.terms_) {
            mpq_class base = x.base * y.base;
            base.canonicalize();
            out.terms_.push_back({x.coeff * y.coeff, base, x.degree + y.degree});
        }
    }
    out.normalize();
    return out;
}

ExpPoly ExpPoly::pow(unsigned exponent) const
{
    ExpPoly out = constant(1);
    for (unsigned i = 0; i < exponent; ++i) {
        out = out * *this;
    }
    return out;
}

ExpPoly ExpPoly::shift(long k) const
{
    ExpPoly out;
    const mpq_class minus_k(-k);
    for (const ExpTerm& term : terms_) {
        const mpq_class scale = term.coeff * power(term.base, -k);
        for (unsigned j = 0; j <= term.degree; ++j) {
            const mpq_class c = scale * mpq_class(binomial(term.degree, j)) * power(minus_k, static_cast<long>(term.degree - j));
            out.terms_.push_back({c, term.base, j});
        }
    }
    out.normalize();
    return out;
}

Real ExpPoly::evaluate(long t, Bits bits) const
{
    Real sum(0, bits);
    for (const ExpTerm& term : terms_) {
        Real value = Real::from_rational(term.coeff, bits) * mixweyl::pow(Real::from_rational(term.base, bits), t);
        if (term.degree > 0) {
            value *= mixweyl::pow(Real(t, bits), static_cast<long>(term.degree));
        }
        sum += value;
    }
    return sum;
}

std::string ExpPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const ExpTerm& term : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << term.coeff.get_str();
        if (term.base != 1) {
            out << "*(" << term.base.get_str() << ")^t";
        }
        if (term.degree == 1) {
            out << "*t";
        } else if (term.degree > 1) {
            out << "*t^" << term.degree;
        }
    }
    return out.str();
}

Rate Rate::reciprocal() const
{
    mpq_class inv = 1 / base;
    inv.canonicalize();
    return {inv, root, -degree};
}

Rate Rate::nth_root(long n) const
{
    mpq_class d = degree / n;
    d.canonicalize();
    return {base, root * n, d};
}

Rate operator*(const Rate& lhs, const Rate& rhs)
{
    Rate out;
    if (lhs.root == rhs.root) {
        out.base = lhs.base * rhs.base;
        out.root = lhs.root;
    } else {
        out.base = power(lhs.base, rhs.root) * power(rhs.base, lhs.root);
        out.root = lhs.root * rhs.root;
    }
    out.base.canonicalize();
    out.degree = lhs.degree + rhs.degree;
    out.degree.canonicalize();
    return out;
}

std::string Rate::to_string() const
{
    std::ostringstream out;
    out << "(" << base.get_str() << ")^(t/" << root << ")*t^(" << degree.get_str() << ")";
    return out.str();
}

int compare(const Rate& lhs, const Rate& rhs)
{
    const mpq_class x = power(lhs.base, rhs.root);
    const mpq_class y = power(rhs.base, lhs.root);
    if (x != y) {
        return x < y ? -1 : 1;
    }
    return cmp(lhs.degree, rhs.degree) < 0 ? -1 : cmp(lhs.degree, rhs.degree) > 0 ? 1 : 0;
}

bool series_diverges(const Rate& rate)
{
    if (rate.base != 1) {
        return rate.base > 1;
    }
    return rate.degree >= -1;
}

int GrowthClass::eventual_sign() const
{
    if (inner.is_zero()) {
        return 0;
    }
    if (sqrt_wrapped) {
        return sign;
    }
    return sgn(inner.dominant().coeff);
}

Rate GrowthClass::rate() const
{
    const ExpTerm& dom = inner.dominant();
    Rate r{dom.base, 1, mpq_class(dom.degree)};
    return sqrt_wrapped ? r.nth_root(2) : r;
}

ExpPoly GrowthClass::square() const { return sqrt_wrapped ? inner : inner * inner; }

std::optional<ExpPoly> GrowthClass::as_poly() const
{
    if (sqrt_wrapped) {
        return std::nullopt;
    }
    return inner;
}

Real GrowthClass::evaluate(long t, Bits bits) const
{
    Real value = inner.evaluate(t, bits);
    if (!sqrt_wrapped) {
        return value;
    }
    value = sqrt(value);
    return sign < 0 ? -value : value;
}

std::string GrowthClass::to_string() const
{
    if (!sqrt_wrapped) {
        return inner.to_string();
    }
    return std::string(sign < 0 ? "-" : "") + "sqrt(" + inner.to_string() + ")";
}

std::optional<ExpPoly> to_exp_poly(const ExprNode& node)
{
    switch (node.kind) {
    case ExprKind::number:
        return ExpPoly::constant(node.value);
    case ExprKind::variable:
        return ExpPoly::variable();
    case ExprKind::negate: {
        auto inner = to_exp_poly(*node.lhs);
        if (!inner) {
            return std::nullopt;
        }
        return -*inner;
    }
    case ExprKind::add:
    case ExprKind::subtract:
    case ExprKind::multiply: {
        auto lhs = to_exp_poly(*node.lhs);
        auto rhs = to_exp_poly(*node.rhs);
        if (!lhs || !rhs) {
            return std::nullopt;
        }
        if (node.kind == ExprKind::add) {
            return *lhs + *rhs;
        }
        if (node.kind == ExprKind::subtract) {
            return *lhs - *rhs;
        }
        return *lhs * *rhs;
    }
    case ExprKind::divide: {
        auto lhs = to_exp_poly(*node.lhs);
        auto rhs = to_exp_poly(*node.rhs);
        if (!lhs || !rhs || !rhs->is_single_term() || rhs->dominant().degree != 0) {
            return std::nullopt;
        }
        const ExpTerm& d = rhs->dominant();
        mpq_class inv_base = 1 / d.base;
        inv_base.canonicalize();
        return *lhs * ExpPoly::term(1 / d.coeff, inv_base, 0);
    }
    case ExprKind::power: {
        auto base = to_exp_poly(*node.lhs);
        auto exponent = to_exp_poly(*node.rhs);
        if (!base || !exponent) {
            return std::nullopt;
        }
        if (auto n = exponent->constant_value(); n && n->get_den() == 1 && *n >= 0 && *n <= 64) {
            return base->pow(static_cast<unsigned>(n->get_num().get_ui()));
        }
        const auto b = base->constant_value();
        if (!b || *b <= 0) {
            return std::nullopt;
        }
        mpz_class slope = 0;
        mpz_class offset = 0;
        for (const ExpTerm& term : exponent->terms()) {
            if (term.base != 1 || term.degree > 1 || term.coeff.get_den() != 1) {
                return std::nullopt;
            }
            (term.degree == 1 ? slope : offset) = term.coeff.get_num();
        }
        if (!slope.fits_slong_p() || !offset.fits_slong_p()) {
            return std::nullopt;
        }
        return ExpPoly::term(power(*b, offset.get_si()), power(*b, slope.get_si()), 0);
    }
    case ExprKind::sqrt:
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<GrowthClass> asymptotic_class(const CoefficientExpr& expr)
{
    const ExprNode* node = &expr.root();
    int sign = 1;
    while (node->kind == ExprKind::negate && node->lhs->kind != ExprKind::number) {
        sign = -sign;
        node = node->lhs.get();
    }
    if (node->kind == ExprKind::sqrt) {
        auto inner = to_exp_poly(*node->lhs);
        if (!inner || (!inner->is_zero() && inner->dominant().coeff < 0)) {
            return std::nullopt;
        }
        return GrowthClass{*inner, true, sign};
    }
    auto poly = to_exp_poly(expr.root());
    if (!poly) {
        return std::nullopt;
    }
    return GrowthClass{*poly, false, 1};
}

std::optional<long> dominance_onset(const ExpPoly& f, long from, long limit)
{
    if (f.is_zero()) {
        return std::nullopt;
    }
    const ExpTerm& dom = f.dominant();
    struct Ratio {
        double log_scale;
        double log_q;
        double m;
    };
    std::vector<Ratio> ratios;
    long start = std::max(from, 1L);
    for (std::size_t i = 1; i < f.terms().size(); ++i) {
        const ExpTerm& term = f.terms()[i];
        mpq_class q = term.base / dom.base;
        q.canonicalize();
        const long m = static_cast<long>(term.degree) - static_cast<long>(dom.degree);
        start = std::max(start, monotone_from(q, m));
        ratios.push_back({log_abs(term.coeff) - log_abs(dom.coeff), log_abs(q), static_cast<double>(m)});
    }
    if (ratios.empty()) {
        return start;
    }
    return first_true(start, limit, [&](long t) {
        double sum = 0.0;
        const double lt = std::log(static_cast<double>(t));
        for (const Ratio& r : ratios) {
            sum += std::exp(r.log_scale + static_cast<double>(t) * r.log_q + r.m * lt);
        }
        return sum <= 0.5;
    });
}

std::optional<long> decay_below(const ExpPoly& f, double eps, long from, long limit)
{
    long start = std::max(from, 1L);
    for (const ExpTerm& term : f.terms()) {
        if (term.base >= 1) {
            return std::nullopt;
        }
        start = std::max(start, monotone_from(term.base, static_cast<long>(term.degree)));
    }
    if (f.is_zero()) {
        return start;
    }
    const double log_eps = std::log(eps);
    return first_true(start, limit, [&](long t) {
        double sum = 0.0;
        const double lt = std::log(static_cast<double>(t));
        for (const ExpTerm& term : f.terms()) {
            sum += std::exp(log_abs(term.coeff) + static_cast<double>(t) * log_abs(term.base) + term.degree * lt - log_eps);
        }
        return sum <= 1.0;
    });
}

std::optional<long> exceeds_from(const ExpPoly& f, double bound, long from, long limit)
{
    if (f.is_zero()) {
        return std::nullopt;
    }
    const ExpTerm& dom = f.dominant();
    if (dom.base < 1 || (dom.base == 1 && dom.degree == 0)) {
        return std::nullopt;
    }
    const auto onset = dominance_onset(f, from, limit);
    if (!onset) {
        return std::nullopt;
    }
    const double log_half = log_abs(dom.coeff) - std::log(2.0);
    const double log_b = log_abs(dom.base);
    const double log_bound = std::log(std::max(bound, 1e-300));
    return first_true(*onset, limit, [&](long t) {
        return log_half + static_cast<double>(t) * log_b + dom.degree * std::log(static_cast<double>(t)) >= log_bound;
    });
}

}  // namespace mixweyl
