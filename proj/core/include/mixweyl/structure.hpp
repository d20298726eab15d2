#pragma once

// Structural identities of the equation: quasi-difference, Lagrange bracket,
// Green's formula, Lagrange identity, Wronskian constancy and the
// variation-of-parameters representation against a second spectral parameter.

#include <vector>

#include "mixweyl/model.hpp"
#include "mixweyl/recurrence.hpp"

namespace mixweyl {

/// Arbitrary finite sequence: y1 on a-1..N+1, y2 on a-1..N.
class Sequence {
public:
    Sequence(long a, long N, std::vector<Scalar> y1, std::vector<Scalar> y2);
    static Sequence from(const Trajectory& y);

    long a() const { return a_; }
    long N() const { return N_; }
    const Scalar& y1(long t) const;
    const Scalar& y2(long t) const;

private:
    long a_;
    long N_;
    std::vector<Scalar> y1_;
    std::vector<Scalar> y2_;
};

/// p(t)(y1(t+1) - y1(t)) + c(t) y2(t).
Scalar quasi_difference(const CoefficientSet& model, const Scalar& y1_t, const Scalar& y1_next, const Scalar& y2_t, long t);

/// [y, z](t) = y1(t+1) conj(z[1](t)) - y[1](t) conj(z1(t+1)) on stored quasi-differences.
/// Throws WindowError when t is outside either window.
Scalar bracket(const Trajectory& y, const Trajectory& z, long t);

/// The same pairing for arbitrary sequences, with quasi-differences from the model.
Defect bracket(const CoefficientSet& model, const Sequence& y, const Sequence& z, long t);

/// <L y, z>_N - <y, L z>_N - [y, z](t)|_{a-1}^{N}, with L applied row by row,
/// inner products over a..N.
Defect green_defect(const CoefficientSet& model, const Sequence& y, const Sequence& z, long N);

/// (lambda - conj(mu)) sum_{t=a}^{N} psi*(t) phi(t) - [phi, psi](t)|_{a-1}^{N}.
/// Throws NotASolution when either input fails the equation residual check.
Defect lagrange_identity_defect(const CoefficientSet& model, const Trajectory& phi, const Trajectory& psi, long N);

/// phi1(t+1) psi[1](t) - phi[1](t) psi1(t+1), no conjugation.
/// Throws Error when the two trajectories belong to different lambda.
Scalar wronskian(const Trajectory& phi, const Trajectory& psi, long t);

/// The Wronskian minus `expected`, with the magnitude of its two products.
Defect wronskian_defect(const Trajectory& phi, const Trajectory& psi, long t, const Scalar& expected);

struct VopResult {
    Scalar k1;
    Scalar k2;
    Defect first;   // z1 representation at t_check
    Defect second;  // z2 representation at t_check
};

/// Matches k1, k2 on z1 at N+3 and N+4 and returns the defect of both
/// representations at t_check > N+2. phi, psi solve the equation at lambda0,
/// z at lambda. Throws SingularSystem when the matching system is singular.
VopResult vop_reconstruct(const CoefficientSet& model, const Trajectory& phi, const Trajectory& psi, const Trajectory& z,
                          long N, long t_check);

}  // namespace mixweyl
