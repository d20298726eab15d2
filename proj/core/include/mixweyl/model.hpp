#pragma once

// Coefficient families p, q, c, h, d on the grid t >= a-1 and the quantities
// derived from them at a spectral parameter lambda.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mixweyl/asymptotics.hpp"
#include "mixweyl/expr.hpp"
#include "mixweyl/real.hpp"

namespace mixweyl {

/// Explicit values for t = start, start+1, ...; any other t is an error.
struct CoefficientTable {
    long start = 0;
    std::vector<mpq_class> values;

    long end() const { return start + static_cast<long>(values.size()) - 1; }
};

class Coefficient {
public:
    Coefficient() : Coefficient(CoefficientExpr::constant(0)) {}
    Coefficient(CoefficientExpr expr);
    Coefficient(CoefficientTable table);
    static Coefficient parse(std::string_view text) { return Coefficient(CoefficientExpr::parse(text)); }

    Real at(long t, const PrecisionConfig& precision) const;

    bool is_table() const { return std::holds_alternative<CoefficientTable>(source_); }
    const CoefficientExpr* expr() const { return std::get_if<CoefficientExpr>(&source_); }
    const CoefficientTable* table() const { return std::get_if<CoefficientTable>(&source_); }

    /// Normal form of an expression coefficient; nullopt for tables and unrecognized expressions.
    const std::optional<GrowthClass>& growth() const { return growth_; }
    /// Certainly zero for every t.
    bool is_identically_zero() const;
    std::string describe() const;

private:
    std::variant<CoefficientExpr, CoefficientTable> source_;
    std::optional<GrowthClass> growth_;
};

enum class Coef { p, q, c, h, d };

struct CoefficientValues {
    Real p, q, c, h, d;
};

class CoefficientSet {
public:
    /// Throws ModelError for an invalid precision configuration.
    CoefficientSet(long a, Coefficient p, Coefficient q, Coefficient c, Coefficient h, Coefficient d,
                   PrecisionConfig precision = {});

    long a() const { return a_; }
    const Coefficient& coefficient(Coef which) const { return coeffs_[static_cast<std::size_t>(which)]; }
    const Coefficient& p() const { return coefficient(Coef::p); }
    const Coefficient& q() const { return coefficient(Coef::q); }
    const Coefficient& c() const { return coefficient(Coef::c); }
    const Coefficient& h() const { return coefficient(Coef::h); }
    const Coefficient& d() const { return coefficient(Coef::d); }
    const PrecisionConfig& precision() const { return precision_; }
    Bits bits() const { return precision_.bits(); }

    CoefficientSet with_precision(const PrecisionConfig& precision) const;
    CoefficientSet with_bits(Bits bits) const;

    /// Value at t >= a-1; throws ModelError below the grid or when p(t) = 0.
    Real value(Coef which, long t) const;
    CoefficientValues values_at(long t) const;

    /// M(t) = d(t) - (c(t)^2 - h(t)c(t)) / p(t).
    Real script_m(long t) const;

    /// Exact normal form of M when p, c, h, d allow one.
    std::optional<GrowthClass> script_m_class() const;

private:
    long a_;
    std::array<Coefficient, 5> coeffs_;
    PrecisionConfig precision_;
};

struct DerivedSample {
    long t = 0;
    Scalar p_tilde;
    std::optional<Scalar> q_tilde;  // t >= a
    Scalar alpha;
    Scalar H;
    Scalar M_script;
};

/// Throws DivisionByZero when lambda = d(t) (or d(t-1) for q_tilde) and ModelError when p(t) = 0.
DerivedSample derived_at(const CoefficientSet& model, long t, const Scalar& lambda);

struct SpectralPoint {
    Scalar lambda;
    Real margin;                        // min over a-1 <= t <= horizon of min(|lambda-d|, |lambda-M|)
    bool decided_symbolically = false;  // inf over all t was decided exactly
    bool positive_everywhere = false;   // the decided inf is > 0; meaningful when decided_symbolically

    bool admissible() const { return margin.sign() > 0 && (!decided_symbolically || positive_everywhere); }
};

/// Throws ModelError when horizon < a.
SpectralPoint spectral_gap(const CoefficientSet& model, const Scalar& lambda, long horizon);

/// min(|lambda-d(t)|, |lambda-M(t)|) at a single t.
Real spectral_distance(const CoefficientSet& model, const Scalar& lambda, long t);

struct PerturbationSplit {
    CoefficientSet diagonal;  // c = h = 0
    Coefficient c;
    Coefficient h;
    bool delta_is_zero = false;
};

PerturbationSplit split_perturbation(const CoefficientSet& model);

}  // namespace mixweyl
