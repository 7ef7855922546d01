#pragma once

#include <optional>
#include <vector>

#include "rkcert/linalg.hpp"
#include "rkcert/types.hpp"

namespace rkcert {

// Relative factor for numerical rank decisions in the staircase reduction:
// a singular value counts as nonzero when it exceeds
// rows * kRankTolFactor * (largest singular value of the current block).
inline constexpr double kRankTolFactor = 1e-12;

/// Certificate for the hypocoercivity index of a semi-dissipative matrix.
/// T_m denotes the partial sums sum_{j<=m} L_S^j L_H (L_S^*)^j.
struct HCCertificate {
    std::optional<int> mHC;               // empty = no finite index up to maxM
    std::vector<double> tChainMaxEigs;    // lambda_max(T_0), ..., last T computed
    std::optional<ComplexVector> witness; // unit vector, see witness_vector()
};

/// One numerical-rank decision taken during the staircase reduction,
/// retained so borderline gaps can be audited.
struct RankDecision {
    int step = 0;                        // 0 = rank of R, k >= 1 = k-th coupling block
    std::vector<double> singularValues;  // magnitudes the decision was made on
    int rank = 0;
    double threshold = 0.0;
};

/// Unitary congruence of a (skew-Hermitian, Hermitian) pair into block
/// tridiagonal / leading-block form. Orientation: jT = v J v*, rT = v R v*.
struct StaircaseForm {
    ComplexMatrix v;             // unitary
    int r = 0;                   // block count, including the trailing block
    std::vector<int> blockSizes; // n_1 >= ... >= n_{r-1} > 0, n_r >= 0
    ComplexMatrix jT;            // block tridiagonal skew-Hermitian part
    ComplexMatrix rT;            // diag(R_1, 0, ..., 0), R_1 nonsingular
    std::vector<RankDecision> rankDecisions;
};

/// Unitary congruence splitting a semi-dissipative matrix into an
/// asymptotically stable part l1 and a skew-Hermitian part l2.
struct BlockDiagonalForm {
    ComplexMatrix v;
    std::optional<ComplexMatrix> l1;  // semi-dissipative, asymptotically stable
    std::optional<ComplexMatrix> l2;  // skew-Hermitian
};

/// Smallest m <= maxM with T_m negative definite, by definition. maxM < 0
/// selects the default n (a finite index, when it exists, is at most n-1).
///
/// The definiteness decision is taken on the norm-scaled matrix m/||m||_2 via
/// the smallest singular value of the stacked factor
/// [(-L_H)^{1/2}; (-L_H)^{1/2} L_S^*; ...; (-L_H)^{1/2} (L_S^*)^m],
/// which is scale-invariant and avoids the ||L_S||^{2m} dynamic range of
/// T_m itself. lambda_max(T_m) of the unscaled matrix is recorded as evidence.
HCCertificate hc_index_definitional(const ComplexMatrix& m, double tol = kEigTol,
                                    int maxM = -1);

/// Staircase reduction of (j, r); j skew-Hermitian, r Hermitian nonzero.
/// If r is nonsingular the identity transformation is returned (r = 2).
StaircaseForm staircase(const ComplexMatrix& j, const ComplexMatrix& r,
                        double tol = kRankTolFactor);

/// Index via the staircase block count: m_HC = r - 2. Requires m
/// semi-dissipative with nonzero Hermitian part; throws
/// NotAsymptoticallyStable (carrying the decoupled block) when n_r > 0.
int hc_index_staircase(const ComplexMatrix& m, double tol = kRankTolFactor);

/// Block diagonalization of a semi-dissipative matrix. Skew-Hermitian input
/// yields l1 empty; asymptotically stable input yields l2 empty.
BlockDiagonalForm block_diagonalize(const ComplexMatrix& m, double tol = kRankTolFactor);

/// Unit vector u0 in the numerical kernel of T_{level-1} (level 0: the whole
/// space) maximizing ||(-L_H)^{1/2} L_S^level u0|| over that kernel; the
/// maximum must exceed tol or WitnessNotFound is thrown (level > m_HC).
ComplexVector witness_vector(const ComplexMatrix& m, int level, double tol = kEigTol);

}  // namespace rkcert
