#include "mixweyl/recurrence.hpp"

#include <string>

namespace mixweyl {

namespace {

struct StepCoefficients {
    CoefficientValues v;
    Scalar gap;  // lambda - d
    Scalar p_tilde;
    Scalar alpha;
    Scalar H;
};

StepCoefficients step_coefficients(const CoefficientSet& model, long t, const Scalar& lambda)
{
    StepCoefficients s{model.values_at(t), {}, {}, {}, {}};
    s.gap = lambda - s.v.d;
    const Real m = s.v.d - (s.v.c * s.v.c - s.v.h * s.v.c) / s.v.p;
    if (s.gap.is_zero() || (lambda - m).is_zero()) {
        throw InadmissibleLambda("lambda " + lambda.to_string(17) + " hits d or M at t=" + std::to_string(t));
    }
    s.alpha = (s.v.h * s.v.c) / s.gap;
    s.p_tilde = (s.v.c * s.v.c - s.v.h * s.v.c) / s.gap + s.v.p;
    s.H = (s.v.h * s.v.h) / s.gap + s.v.q - lambda;
    if (s.p_tilde.is_zero()) {
        throw InadmissibleLambda("p~ vanishes at t=" + std::to_string(t));
    }
    return s;
}

Scalar y2_from(const StepCoefficients& s, const Scalar& y1_next, const Scalar& qd)
{
    const Scalar denom = s.gap * s.p_tilde;
    const Real h_minus_c = s.v.h - s.v.c;
    const Scalar k1 = s.alpha * h_minus_c / denom + s.v.h / s.gap;
    const Scalar k2 = -h_minus_c / denom;
    return k1 * y1_next + k2 * qd;
}

Real relative(const Scalar& value, const Real& scale)
{
    const Real magnitude = value.abs();
    return scale.is_zero() ? magnitude : magnitude / scale;
}

const Scalar& checked(const std::vector<Scalar>& data, long first, long t, const char* name)
{
    const long last = first + static_cast<long>(data.size()) - 1;
    if (t < first || t > last) {
        throw WindowError(std::string(name) + "(" + std::to_string(t) + ") is outside the stored window " +
                          std::to_string(first) + ".." + std::to_string(last));
    }
    return data[static_cast<std::size_t>(t - first)];
}

}  // namespace

Mat2 Mat2::identity(Bits bits) { return {Scalar::one(bits), Scalar::zero(bits), Scalar::zero(bits), Scalar::one(bits)}; }

Vec2 Mat2::operator*(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

Mat2 Mat2::operator*(const Mat2& m) const
{
    return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22, a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
}

Mat2 StepMatrix::forward() const
{
    const Bits bits = A.a11.precision();
    const Scalar one = Scalar::one(bits);
    return {one - A.a22, A.a12, A.a21, one - A.a11};
}

Mat2 StepMatrix::backward() const
{
    const Bits bits = A.a11.precision();
    const Scalar one = Scalar::one(bits);
    return {one - A.a11, -A.a12, -A.a21, one - A.a22};
}

Defect StepMatrix::determinant_defect() const
{
    const Mat2 m = backward();
    const Scalar first = m.a11 * m.a22;
    const Scalar second = m.a12 * m.a21;
    const Bits bits = A.a11.precision();
    return {first - second - Scalar::one(bits), first.abs() + second.abs() + Real(1, bits)};
}

Trajectory::Trajectory(Scalar lambda, long a, long N, std::vector<Scalar> y1, std::vector<Scalar> y2,
                       std::vector<Scalar> qd)
    : lambda_(std::move(lambda)), a_(a), N_(N), y1_(std::move(y1)), y2_(std::move(y2)), qd_(std::move(qd))
{
}

const Scalar& Trajectory::y1(long t) const { return checked(y1_, a_ - 1, t, "y1"); }
const Scalar& Trajectory::y2(long t) const { return checked(y2_, a_ - 1, t, "y2"); }
const Scalar& Trajectory::qd(long t) const { return checked(qd_, a_ - 1, t, "y[1]"); }

StepMatrix step_matrix(const CoefficientSet& model, long t, const Scalar& lambda)
{
    const StepCoefficients s = step_coefficients(model, t, lambda);
    const Scalar inv = Scalar::one(model.bits()) / s.p_tilde;
    StepMatrix step{t, {-s.alpha * inv, inv, (s.H - s.alpha) * s.alpha * inv + s.H, (s.alpha - s.H) * inv}};
    const Defect defect = step.determinant_defect();
    if (defect.relative() > working_tolerance(model.bits() / 2, 0)) {
        throw PrecisionExhausted("det(I - A) drifted from 1 at t=" + std::to_string(t));
    }
    return step;
}

Scalar reconstruct_y2(const CoefficientSet& model, const Scalar& lambda, const Scalar& y1_next, const Scalar& qd, long t)
{
    return y2_from(step_coefficients(model, t, lambda), y1_next, qd);
}

Vec2 solve_left_end(const CoefficientSet& model, const Scalar& lambda, const BoundaryData& bd)
{
    const long t = model.a() - 1;
    const StepCoefficients s = step_coefficients(model, t, lambda);
    const Scalar e = (s.v.h - s.v.c) / s.gap;
    const Scalar f = -(s.v.c / s.gap) * bd.c1;
    const Scalar g = bd.c2 - s.v.p * bd.c1;
    const Scalar det = e * s.v.c - s.v.p;
    if (det.is_zero()) {
        throw SingularSystem("left-end system is singular although lambda is admissible");
    }
    return {(f * s.v.c + g) / det, (e * g + s.v.p * f) / det};
}

Trajectory propagate(const CoefficientSet& model, const Scalar& lambda, const BoundaryData& bd, long N)
{
    const long a = model.a();
    if (N < a) {
        throw ModelError("propagate needs N >= a, got N=" + std::to_string(N));
    }
    const std::size_t count = static_cast<std::size_t>(N - a + 2);
    std::vector<Scalar> y1(count + 1);
    std::vector<Scalar> y2(count);
    std::vector<Scalar> qd(count);

    const Vec2 left = solve_left_end(model, lambda, bd);
    y1[0] = left.x;
    y2[0] = left.y;
    y1[1] = bd.c1;
    qd[0] = bd.c2;

    Vec2 v{bd.c1, bd.c2};
    for (long t = a; t <= N; ++t) {
        const StepCoefficients s = step_coefficients(model, t, lambda);
        const Scalar inv = Scalar::one(model.bits()) / s.p_tilde;
        const StepMatrix step{t, {-s.alpha * inv, inv, (s.H - s.alpha) * s.alpha * inv + s.H, (s.alpha - s.H) * inv}};
        v = step.forward() * v;
        check_range(v.x, model.precision(), "y1(" + std::to_string(t + 1) + ")");
        check_range(v.y, model.precision(), "y[1](" + std::to_string(t) + ")");
        const std::size_t i = static_cast<std::size_t>(t - a + 1);
        y1[i + 1] = v.x;
        qd[i] = v.y;
        y2[i] = y2_from(s, v.x, v.y);
    }
    return {lambda, a, N, std::move(y1), std::move(y2), std::move(qd)};
}

Trajectory propagate_backward(const CoefficientSet& model, const Scalar& lambda, const Vec2& state_at_N, long N)
{
    const long a = model.a();
    if (N < a) {
        throw ModelError("propagate_backward needs N >= a, got N=" + std::to_string(N));
    }
    const std::size_t count = static_cast<std::size_t>(N - a + 2);
    std::vector<Scalar> y1(count + 1);
    std::vector<Scalar> y2(count);
    std::vector<Scalar> qd(count);

    Vec2 v = state_at_N;
    for (long t = N; t >= a; --t) {
        const StepCoefficients s = step_coefficients(model, t, lambda);
        const std::size_t i = static_cast<std::size_t>(t - a + 1);
        y1[i + 1] = v.x;
        qd[i] = v.y;
        y2[i] = y2_from(s, v.x, v.y);
        const Scalar inv = Scalar::one(model.bits()) / s.p_tilde;
        const StepMatrix step{t, {-s.alpha * inv, inv, (s.H - s.alpha) * s.alpha * inv + s.H, (s.alpha - s.H) * inv}};
        v = step.backward() * v;
        check_range(v.x, model.precision(), "y1(" + std::to_string(t) + ")");
        check_range(v.y, model.precision(), "y[1](" + std::to_string(t - 1) + ")");
    }
    const BoundaryData bd{v.x, v.y};
    const Vec2 left = solve_left_end(model, lambda, bd);
    y1[0] = left.x;
    y2[0] = left.y;
    y1[1] = bd.c1;
    qd[0] = bd.c2;
    return {lambda, a, N, std::move(y1), std::move(y2), std::move(qd)};
}

const Mat2& FundamentalMatrix::at(long t) const
{
    const long last = first + static_cast<long>(Y.size()) - 1;
    if (t < first || t > last) {
        throw WindowError("Y(" + std::to_string(t) + ") is outside " + std::to_string(first) + ".." + std::to_string(last));
    }
    return Y[static_cast<std::size_t>(t - first)];
}

FundamentalMatrix fundamental_matrix(const CoefficientSet& model, const Scalar& lambda, long N)
{
    const long a = model.a();
    if (N < a - 1) {
        throw ModelError("fundamental_matrix needs N >= a-1, got N=" + std::to_string(N));
    }
    FundamentalMatrix out{a - 1, {Mat2::identity(model.bits())}};
    for (long t = a; t <= N; ++t) {
        out.Y.push_back(step_matrix(model, t, lambda).forward() * out.Y.back());
    }
    return out;
}

Trajectory oracle_three_term(const CoefficientSet& model, const Scalar& lambda, const BoundaryData& bd, long N)
{
    const long a = model.a();
    if (N < a) {
        throw ModelError("oracle_three_term needs N >= a, got N=" + std::to_string(N));
    }
    for (long t = a - 1; t <= N + 1; ++t) {
        if (spectral_distance(model, lambda, t).is_zero()) {
            throw InadmissibleLambda("lambda " + lambda.to_string(17) + " hits d or M at t=" + std::to_string(t));
        }
    }
    const std::size_t count = static_cast<std::size_t>(N - a + 2);
    std::vector<Scalar> y1(count + 1);
    std::vector<Scalar> y2(count);
    std::vector<Scalar> qd(count);

    DerivedSample prev = derived_at(model, a - 1, lambda);
    y1[1] = bd.c1;
    y1[0] = bd.c1 - (bd.c2 - prev.alpha * bd.c1) / prev.p_tilde;
    for (long t = a; t <= N; ++t) {
        const DerivedSample cur = derived_at(model, t, lambda);
        const std::size_t i = static_cast<std::size_t>(t - a + 1);
        const Scalar diag = cur.p_tilde + prev.p_tilde + *cur.q_tilde - lambda;
        y1[i + 1] = (diag * y1[i] - prev.p_tilde * y1[i - 1]) / cur.p_tilde;
        check_range(y1[i + 1], model.precision(), "oracle y1(" + std::to_string(t + 1) + ")");
        prev = cur;
    }
    for (long t = a - 1; t <= N; ++t) {
        const std::size_t i = static_cast<std::size_t>(t - a + 1);
        const CoefficientValues v = model.values_at(t);
        const Scalar gap = lambda - v.d;
        const Scalar delta = y1[i + 1] - y1[i];
        y2[i] = (v.c * delta + v.h * y1[i]) / gap;
        qd[i] = v.p * delta + v.c * y2[i];
    }
    return {lambda, a, N, std::move(y1), std::move(y2), std::move(qd)};
}

EquationResidual equation_residual(const CoefficientSet& model, const Trajectory& y)
{
    const Bits bits = model.bits();
    EquationResidual out{Real(bits), Real(bits), Real(bits)};
    const Scalar& lambda = y.lambda();
    const long a = y.a();
    Scalar qd_prev;
    Real qd_prev_scale(bits);
    for (long t = a - 1; t <= y.N(); ++t) {
        const CoefficientValues v = model.values_at(t);
        const Scalar delta = y.y1(t + 1) - y.y1(t);
        const Scalar p_part = v.p * delta;
        const Scalar c_part = v.c * y.y2(t);
        const Scalar qd = p_part + c_part;
        const Real qd_scale = abs(v.p) * (y.y1(t + 1).abs() + y.y1(t).abs()) + c_part.abs();
        out.quasi_difference = max(out.quasi_difference, relative(y.qd(t) - qd, qd_scale + y.qd(t).abs()));

        const Scalar h1 = v.h * y.y1(t);
        const Scalar d2 = v.d * y.y2(t);
        const Scalar l2 = lambda * y.y2(t);
        const Scalar row2 = v.c * delta + h1 + d2 - l2;
        const Real row2_scale = abs(v.c) * (y.y1(t + 1).abs() + y.y1(t).abs()) + h1.abs() + d2.abs() + l2.abs();
        out.row2 = max(out.row2, relative(row2, row2_scale));

        if (t >= a) {
            const Scalar q1 = v.q * y.y1(t);
            const Scalar h2 = v.h * y.y2(t);
            const Scalar l1 = lambda * y.y1(t);
            const Scalar row1 = -(qd - qd_prev) + q1 + h2 - l1;
            const Real row1_scale = qd_scale + qd_prev_scale + q1.abs() + h2.abs() + l1.abs();
            out.row1 = max(out.row1, relative(row1, row1_scale));
        }
        qd_prev = qd;
        qd_prev_scale = qd_scale;
    }
    return out;
}

Real max_relative_deviation(const Trajectory& u, const Trajectory& v, long up_to)
{
    Real worst(u.precision());
    const long first = std::max(u.a(), v.a()) - 1;
    for (long t = first; t <= up_to; ++t) {
        const Scalar* pairs[4][2] = {{&u.y1(t), &v.y1(t)},
                                     {&u.y1(t + 1), &v.y1(t + 1)},
                                     {&u.y2(t), &v.y2(t)},
                                     {&u.qd(t), &v.qd(t)}};
        Real scale(u.precision());
        Real gap(u.precision());
        for (const auto& pair : pairs) {
            scale = max(scale, max(pair[0]->abs(), pair[1]->abs()));
            gap = max(gap, (*pair[0] - *pair[1]).abs());
        }
        if (!scale.is_zero()) {
            worst = max(worst, gap / scale);
        }
    }
    return worst;
}

}  // namespace mixweyl
