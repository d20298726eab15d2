#pragma once

// Initial value problem by the first-order transfer recursion
//   v(t) = (I - A(t, lambda))^{-1} v(t-1),   v(t) = (y1(t+1), y^[1](t)),
// plus an independent scalar three-term recursion used as an oracle.

#include <vector>

#include "mixweyl/model.hpp"
#include "mixweyl/real.hpp"

namespace mixweyl {

struct Vec2 {
    Scalar x;
    Scalar y;
};

struct Mat2 {
    Scalar a11, a12, a21, a22;

    static Mat2 identity(Bits bits);
    Scalar det() const { return a11 * a22 - a12 * a21; }
    Vec2 operator*(const Vec2& v) const;
    Mat2 operator*(const Mat2& m) const;
};

struct StepMatrix {
    long t = 0;
    Mat2 A;

    /// (I - A)^{-1}, using det(I - A) = 1.
    Mat2 forward() const;
    /// I - A, the inverse of forward().
    Mat2 backward() const;
    /// det(I - A) - 1 with the magnitude of the products that form it.
    Defect determinant_defect() const;
};

struct BoundaryData {
    Scalar c1;  // y1(a)
    Scalar c2;  // y^[1](a-1)
};

/// Solution values on the window a-1..N+1 (y1) and a-1..N (y2, y^[1]).
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(Scalar lambda, long a, long N, std::vector<Scalar> y1, std::vector<Scalar> y2, std::vector<Scalar> qd);

    const Scalar& lambda() const { return lambda_; }
    long a() const { return a_; }
    long N() const { return N_; }

    /// Each accessor throws WindowError outside its stored range.
    const Scalar& y1(long t) const;
    const Scalar& y2(long t) const;
    const Scalar& qd(long t) const;
    /// (y1(t+1), y^[1](t)).
    Vec2 state(long t) const { return {y1(t + 1), qd(t)}; }

    Bits precision() const { return lambda_.precision(); }

private:
    Scalar lambda_;
    long a_ = 0;
    long N_ = 0;
    std::vector<Scalar> y1_;
    std::vector<Scalar> y2_;
    std::vector<Scalar> qd_;
};

/// Throws InadmissibleLambda when lambda hits d(t) or M(t), PrecisionExhausted
/// when det(I - A) = 1 is lost to rounding.
StepMatrix step_matrix(const CoefficientSet& model, long t, const Scalar& lambda);

/// Throws InadmissibleLambda, ModelError for N < a, PrecisionExhausted on overflow.
Trajectory propagate(const CoefficientSet& model, const Scalar& lambda, const BoundaryData& bd, long N);

/// Solution fixed by its state v(N) = (y1(N+1), y^[1](N)), stepped backwards
/// with v(t-1) = (I - A(t)) v(t) down to t = a.
Trajectory propagate_backward(const CoefficientSet& model, const Scalar& lambda, const Vec2& state_at_N, long N);

/// y2(t) from y1(t+1) and y^[1](t).
Scalar reconstruct_y2(const CoefficientSet& model, const Scalar& lambda, const Scalar& y1_next, const Scalar& qd, long t);

/// (y1(a-1), y2(a-1)) from the boundary data.
Vec2 solve_left_end(const CoefficientSet& model, const Scalar& lambda, const BoundaryData& bd);

/// Y(t) for t = a-1..N with Y(a-1) = I and Y(t) = (I - A(t))^{-1} Y(t-1);
/// column j maps the boundary data e_j to v(t).
struct FundamentalMatrix {
    long first = 0;
    std::vector<Mat2> Y;

    const Mat2& at(long t) const;
};

FundamentalMatrix fundamental_matrix(const CoefficientSet& model, const Scalar& lambda, long N);

/// y1 from p~(t) y1(t+1) = (p~(t) + p~(t-1) + q~(t) - lambda) y1(t) - p~(t-1) y1(t-1),
/// y2 from y2 = (c Dy1 + h y1)/(lambda - d), y^[1] = p Dy1 + c y2.
Trajectory oracle_three_term(const CoefficientSet& model, const Scalar& lambda, const BoundaryData& bd, long N);

struct EquationResidual {
    Real row1;  // max relative residual of the second-order row over a..N
    Real row2;  // max relative residual of the algebraic row over a-1..N
    Real quasi_difference;  // max relative mismatch of stored y^[1] against p Dy1 + c y2
};

EquationResidual equation_residual(const CoefficientSet& model, const Trajectory& y);

/// Max over t in the shared window of the largest gap between u and v among
/// y1(t), y1(t+1), y2(t), y^[1](t), relative to the largest of those values.
Real max_relative_deviation(const Trajectory& u, const Trajectory& v, long up_to);

}  // namespace mixweyl
