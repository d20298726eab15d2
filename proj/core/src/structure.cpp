#include "mixweyl/structure.hpp"

#include <string>

namespace mixweyl {

namespace {

const Scalar& checked(const std::vector<Scalar>& data, long first, long t, const char* name)
{
    const long last = first + static_cast<long>(data.size()) - 1;
    if (t < first || t > last) {
        throw WindowError(std::string(name) + "(" + std::to_string(t) + ") is outside the sequence window " +
                          std::to_string(first) + ".." + std::to_string(last));
    }
    return data[static_cast<std::size_t>(t - first)];
}

// The operator applied to a sequence at one t, with magnitudes of the summands.
struct Applied {
    Scalar qd;
    Real qd_scale;
    Scalar row1;
    Real row1_scale;
    Scalar row2;
    Real row2_scale;
};

std::vector<Applied> apply_operator(const CoefficientSet& model, const Sequence& y, long N)
{
    std::vector<Applied> out;
    const long a = model.a();
    for (long t = a - 1; t <= N; ++t) {
        const CoefficientValues v = model.values_at(t);
        const Scalar delta = y.y1(t + 1) - y.y1(t);
        const Real delta_scale = y.y1(t + 1).abs() + y.y1(t).abs();
        const Scalar c2 = v.c * y.y2(t);
        Applied cur;
        cur.qd = v.p * delta + c2;
        cur.qd_scale = abs(v.p) * delta_scale + c2.abs();
        const Scalar h1 = v.h * y.y1(t);
        const Scalar d2 = v.d * y.y2(t);
        cur.row2 = v.c * delta + h1 + d2;
        cur.row2_scale = abs(v.c) * delta_scale + h1.abs() + d2.abs();
        if (t >= a) {
            const Applied& prev = out.back();
            const Scalar q1 = v.q * y.y1(t);
            const Scalar h2 = v.h * y.y2(t);
            cur.row1 = -(cur.qd - prev.qd) + q1 + h2;
            cur.row1_scale = cur.qd_scale + prev.qd_scale + q1.abs() + h2.abs();
        } else {
            cur.row1 = Scalar::zero(model.bits());
            cur.row1_scale = Real(model.bits());
        }
        out.push_back(std::move(cur));
    }
    return out;
}

// Sum over a..N of conj(z(t)) . w(t) for solution trajectories.
Defect solution_inner(const Trajectory& phi, const Trajectory& psi, long N)
{
    const Bits bits = phi.precision();
    Defect sum{Scalar::zero(bits), Real(bits)};
    for (long t = phi.a(); t <= N; ++t) {
        const Scalar a1 = psi.y1(t).conj() * phi.y1(t);
        const Scalar a2 = psi.y2(t).conj() * phi.y2(t);
        sum.value += a1 + a2;
        sum.scale += a1.abs() + a2.abs();
    }
    return sum;
}

}  // namespace

Sequence::Sequence(long a, long N, std::vector<Scalar> y1, std::vector<Scalar> y2)
    : a_(a), N_(N), y1_(std::move(y1)), y2_(std::move(y2))
{
    if (N < a) {
        throw ModelError("sequence needs N >= a, got N=" + std::to_string(N));
    }
    const auto expected = static_cast<std::size_t>(N - a + 2);
    if (y1_.size() != expected + 1 || y2_.size() != expected) {
        throw WindowError("sequence on a-1..N needs " + std::to_string(expected + 1) + " values of y1 and " +
                          std::to_string(expected) + " of y2");
    }
}

Sequence Sequence::from(const Trajectory& y)
{
    std::vector<Scalar> y1;
    std::vector<Scalar> y2;
    for (long t = y.a() - 1; t <= y.N() + 1; ++t) {
        y1.push_back(y.y1(t));
        if (t <= y.N()) {
            y2.push_back(y.y2(t));
        }
    }
    return {y.a(), y.N(), std::move(y1), std::move(y2)};
}

const Scalar& Sequence::y1(long t) const { return checked(y1_, a_ - 1, t, "y1"); }
const Scalar& Sequence::y2(long t) const { return checked(y2_, a_ - 1, t, "y2"); }

Scalar quasi_difference(const CoefficientSet& model, const Scalar& y1_t, const Scalar& y1_next, const Scalar& y2_t, long t)
{
    return model.value(Coef::p, t) * (y1_next - y1_t) + model.value(Coef::c, t) * y2_t;
}

Scalar bracket(const Trajectory& y, const Trajectory& z, long t)
{
    return y.y1(t + 1) * z.qd(t).conj() - y.qd(t) * z.y1(t + 1).conj();
}

Defect bracket(const CoefficientSet& model, const Sequence& y, const Sequence& z, long t)
{
    const auto ay = apply_operator(model, y, t);
    const auto az = apply_operator(model, z, t);
    const Applied& ey = ay.back();
    const Applied& ez = az.back();
    const Scalar first = y.y1(t + 1) * ez.qd.conj();
    const Scalar second = ey.qd * z.y1(t + 1).conj();
    return {first - second, y.y1(t + 1).abs() * ez.qd_scale + ey.qd_scale * z.y1(t + 1).abs()};
}

Defect green_defect(const CoefficientSet& model, const Sequence& y, const Sequence& z, long N)
{
    if (N > y.N() || N > z.N()) {
        throw WindowError("green_defect at N=" + std::to_string(N) + " exceeds the sequence window");
    }
    const long a = model.a();
    const Bits bits = model.bits();
    const auto ly = apply_operator(model, y, N);
    const auto lz = apply_operator(model, z, N);
    Defect out{Scalar::zero(bits), Real(bits)};
    for (long t = a; t <= N; ++t) {
        const auto i = static_cast<std::size_t>(t - a + 1);
        out.value += z.y1(t).conj() * ly[i].row1 + z.y2(t).conj() * ly[i].row2;
        out.value -= lz[i].row1.conj() * y.y1(t) + lz[i].row2.conj() * y.y2(t);
        out.scale += z.y1(t).abs() * ly[i].row1_scale + z.y2(t).abs() * ly[i].row2_scale;
        out.scale += y.y1(t).abs() * lz[i].row1_scale + y.y2(t).abs() * lz[i].row2_scale;
    }
    auto boundary = [&](long t) {
        const auto i = static_cast<std::size_t>(t - a + 1);
        const Scalar b = y.y1(t + 1) * lz[i].qd.conj() - ly[i].qd * z.y1(t + 1).conj();
        if (t == N) {
            out.value -= b;
        } else {
            out.value += b;
        }
        out.scale += y.y1(t + 1).abs() * lz[i].qd_scale + ly[i].qd_scale * z.y1(t + 1).abs();
    };
    boundary(N);
    boundary(a - 1);
    return out;
}

Defect lagrange_identity_defect(const CoefficientSet& model, const Trajectory& phi, const Trajectory& psi, long N)
{
    const Real tolerance = working_tolerance(model.bits() / 2, 0);
    for (const Trajectory* y : {&phi, &psi}) {
        const EquationResidual r = equation_residual(model, *y);
        if (r.row1 > tolerance || r.row2 > tolerance || r.quasi_difference > tolerance) {
            throw NotASolution("sequence at lambda " + y->lambda().to_string(17) +
                               " does not solve the equation (relative residual " +
                               max(max(r.row1, r.row2), r.quasi_difference).to_string(3) + ")");
        }
    }
    if (N > phi.N() || N > psi.N()) {
        throw WindowError("lagrange_identity_defect at N=" + std::to_string(N) + " exceeds the trajectory window");
    }
    const Scalar factor = phi.lambda() - psi.lambda().conj();
    const Defect inner = solution_inner(phi, psi, N);
    const Scalar top = bracket(phi, psi, N);
    const Scalar bottom = bracket(phi, psi, phi.a() - 1);
    Defect out{factor * inner.value - (top - bottom), factor.abs() * inner.scale};
    for (long t : {N, phi.a() - 1}) {
        out.scale += phi.y1(t + 1).abs() * psi.qd(t).abs() + phi.qd(t).abs() * psi.y1(t + 1).abs();
    }
    return out;
}

Scalar wronskian(const Trajectory& phi, const Trajectory& psi, long t)
{
    if (!(phi.lambda() == psi.lambda())) {
        throw Error("wronskian needs two solutions at the same lambda, got " + phi.lambda().to_string(17) + " and " +
                    psi.lambda().to_string(17));
    }
    return phi.y1(t + 1) * psi.qd(t) - phi.qd(t) * psi.y1(t + 1);
}

Defect wronskian_defect(const Trajectory& phi, const Trajectory& psi, long t, const Scalar& expected)
{
    const Scalar w = wronskian(phi, psi, t);
    return {w - expected, phi.y1(t + 1).abs() * psi.qd(t).abs() + phi.qd(t).abs() * psi.y1(t + 1).abs()};
}

VopResult vop_reconstruct(const CoefficientSet& model, const Trajectory& phi, const Trajectory& psi, const Trajectory& z,
                          long N, long t_check)
{
    if (t_check <= N + 2) {
        throw WindowError("t_check must exceed N+2, got t_check=" + std::to_string(t_check) + " with N=" +
                          std::to_string(N));
    }
    if (!(phi.lambda() == psi.lambda())) {
        throw Error("phi and psi must share lambda0");
    }
    const Bits bits = model.bits();
    const Scalar& lambda0 = phi.lambda();
    const Scalar& lambda = z.lambda();
    const Scalar shift = lambda0 - lambda;
    const long last = std::max(t_check, N + 4);

    // phi^T z and psi^T z without conjugation, with their magnitudes.
    std::vector<Defect> pz;
    std::vector<Defect> qz;
    for (long s = N + 1; s <= last; ++s) {
        const Scalar p1 = phi.y1(s) * z.y1(s);
        const Scalar p2 = phi.y2(s) * z.y2(s);
        const Scalar q1 = psi.y1(s) * z.y1(s);
        const Scalar q2 = psi.y2(s) * z.y2(s);
        pz.push_back({p1 + p2, p1.abs() + p2.abs()});
        qz.push_back({q1 + q2, q1.abs() + q2.abs()});
    }
    // sum_{s=N+1}^{upto} (u(t) phi^T z(s) - w(t) psi^T z(s))
    auto kernel_sum = [&](const Scalar& u, const Scalar& w, long upto) {
        Defect sum{Scalar::zero(bits), Real(bits)};
        for (long s = N + 1; s <= upto; ++s) {
            const auto i = static_cast<std::size_t>(s - N - 1);
            sum.value += u * pz[i].value - w * qz[i].value;
            sum.scale += u.abs() * pz[i].scale + w.abs() * qz[i].scale;
        }
        return sum;
    };
    auto first_rhs = [&](long t) {
        const Defect k = kernel_sum(psi.y1(t), phi.y1(t), t - 1);
        return Defect{z.y1(t) - shift * k.value, z.y1(t).abs() + shift.abs() * k.scale};
    };

    const long t3 = N + 3;
    const long t4 = N + 4;
    const Scalar det = psi.y1(t3) * phi.y1(t4) - phi.y1(t3) * psi.y1(t4);
    const Real det_scale = psi.y1(t3).abs() * phi.y1(t4).abs() + phi.y1(t3).abs() * psi.y1(t4).abs();
    if (det.is_zero() || det.abs() <= det_scale * working_tolerance(bits)) {
        throw SingularSystem("matching system at t=" + std::to_string(t3) + "," + std::to_string(t4) + " is singular");
    }
    const Defect r3 = first_rhs(t3);
    const Defect r4 = first_rhs(t4);
    VopResult out;
    out.k1 = (r3.value * phi.y1(t4) - phi.y1(t3) * r4.value) / det;
    out.k2 = (psi.y1(t3) * r4.value - r3.value * psi.y1(t4)) / det;

    const long t = t_check;
    const Defect k_first = kernel_sum(psi.y1(t), phi.y1(t), t - 1);
    const Scalar b1 = out.k1 * psi.y1(t);
    const Scalar b2 = out.k2 * phi.y1(t);
    out.first = {z.y1(t) - b1 - b2 - shift * k_first.value,
                 z.y1(t).abs() + b1.abs() + b2.abs() + shift.abs() * k_first.scale};

    const Real m = model.script_m(t);
    const Scalar ratio = (lambda0 - m) / (lambda - m);
    const Defect k_second = kernel_sum(psi.y2(t), phi.y2(t), t);
    const Scalar c1 = out.k1 * psi.y2(t);
    const Scalar c2 = out.k2 * phi.y2(t);
    out.second = {z.y2(t) - ratio * (c1 + c2 + shift * k_second.value),
                  z.y2(t).abs() + ratio.abs() * (c1.abs() + c2.abs() + shift.abs() * k_second.scale)};
    return out;
}

}  // namespace mixweyl
