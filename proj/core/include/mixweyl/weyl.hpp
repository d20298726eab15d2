#pragma once

// Canonical fundamental pair, nested Weyl discs, m-points, chi-solutions and
// the numerical limit-point / limit-circle classifier.

#include <optional>
#include <string>
#include <vector>

#include "mixweyl/model.hpp"
#include "mixweyl/recurrence.hpp"

namespace mixweyl {

/// alpha fixes the left boundary condition, beta the right one; both in [0, pi).
struct BoundaryAngles {
    Real alpha;
    Real beta;

    /// Throws ModelError when an angle leaves [0, pi).
    void validate() const;
};

struct FundamentalPair {
    Real alpha;
    Trajectory phi;  // starts at (sin alpha, -cos alpha)
    Trajectory psi;  // starts at (cos alpha, sin alpha)
};

/// Throws InadmissibleLambda; ModelError for alpha outside [0, pi).
FundamentalPair fundamental_pair(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N);

struct CornerValues {
    long N = 0;
    Scalar A;  // phi1(N+1)
    Scalar B;  // phi[1](N)
    Scalar C;  // psi1(N+1)
    Scalar D;  // psi[1](N)
};

/// Throws WindowError past the pair's window and PrecisionExhausted when
/// AD - BC = 1 is lost to rounding.
CornerValues corner_values(const FundamentalPair& pair, long N);

/// cot(beta), or nullopt for beta = 0.
std::optional<Real> cot_or_infinity(const Real& beta);

/// -(A z + B) / (C z + D); z = nullopt gives -A/C. Throws DivisionByZero.
Scalar m_point(const CornerValues& corner, const std::optional<Real>& z);

/// phi + m psi, componentwise including quasi-differences. Subtractive when
/// psi dominates phi; chi_on_circle and chi_at_center avoid that.
Trajectory chi(const FundamentalPair& pair, const Scalar& m);

/// chi for the m on the circle at N selected by z, rebuilt backwards from
/// its state (1, -z) / (C z + D) at N.
Trajectory chi_on_circle(const CoefficientSet& model, const FundamentalPair& pair, const CornerValues& corner,
                         const std::optional<Real>& z);

/// chi for m = O_N, rebuilt backwards from its state -(conj C, conj D) / (2 i Im(lambda) S_N).
/// Resolving it needs the same guard bits as the disc centers.
Trajectory chi_at_center(const CoefficientSet& model, const FundamentalPair& pair, const CornerValues& corner,
                         const Real& S_N);

/// The m with chi = phi + m psi, read off chi's left boundary data.
Scalar m_from_chi(const Trajectory& chi, const Real& alpha);

/// sum_{t=a}^{N} |chi(t)|^2 - Im m / Im lambda: zero on the circle, negative inside.
Defect on_circle_defect(const CoefficientSet& model, const Trajectory& chi, const Scalar& m, const Scalar& lambda,
                        long N);

/// sum_{t=a}^{N} |y(t)|^2 for N = a..y.N().
std::vector<Real> partial_sums(const Trajectory& y);

struct WeylDisc {
    long N = 0;
    Scalar center;
    Real radius;
    Real S;  // sum_{t=a}^{N} |psi(t)|^2
};

struct DiscSequence {
    std::vector<WeylDisc> discs;  // N = a..N_max
    Bits guard_bits = 0;          // extra mantissa used by the second pass
};

/// Discs for N = a..N_max. The brackets cancel heavily when psi grows, so the
/// sequence is recomputed with enough guard bits to keep the centers accurate
/// at the model precision. Throws InadmissibleLambda for real lambda and
/// PrecisionExhausted when the needed guard exceeds the cap (or any guard at
/// all is needed in native-float mode).
DiscSequence disc_sequence(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N_max);

WeylDisc weyl_disc(const CoefficientSet& model, const Scalar& lambda, const Real& alpha, long N);

/// Largest guard disc_sequence will add.
constexpr Bits kMaxGuardBits = 65536;

enum class GrowthVerdict { bounded, divergent, undecided };
enum class LimitType { LPC, LCC, undecided };

std::string to_string(GrowthVerdict verdict);
std::string to_string(LimitType verdict);

struct L2Profile {
    std::vector<Real> partial_sums;  // index N - a
    GrowthVerdict growth_verdict = GrowthVerdict::undecided;
};

struct ClassifyOptions {
    long n_max = 200;
    double rel_tol = 1e-10;
    double divergence_factor = 1e6;
    long window = 32;
    /// Second lambda whose verdict must agree; nullopt disables the check.
    std::optional<Scalar> cross_check = Scalar::from_longs(1, 1, 53);

    /// Throws ModelError on nonpositive thresholds or a window too long for n_max.
    void validate(long a) const;
};

struct ClassificationReport {
    Scalar lambda;
    Real alpha;
    LimitType verdict = LimitType::undecided;
    std::vector<WeylDisc> disc_samples;
    L2Profile psi_profile;
    L2Profile chi_profile;
    Scalar m_limit;
    int l2_solution_count = 0;  // 0 when undecided
    Bits guard_bits = 0;
    std::optional<LimitType> cross_check_verdict;
    std::string guidance;  // why the verdict is undecided, empty otherwise
};

/// Throws InadmissibleLambda for real lambda or lambda outside the admissible
/// set over a-1..n_max+1, PrecisionExhausted on overflow, ModelError on bad options.
ClassificationReport classify(const CoefficientSet& model, const Scalar& lambda, const Real& alpha,
                              const ClassifyOptions& options = {});

/// U2(psi) = psi1(N+1) cos beta + psi[1](N) sin beta; zero exactly at the
/// eigenvalues of the regular problem on a..N. Throws InadmissibleLambda.
Scalar regular_eigen_residual(const CoefficientSet& model, const Scalar& lambda, const BoundaryAngles& angles, long N);

}  // namespace mixweyl
