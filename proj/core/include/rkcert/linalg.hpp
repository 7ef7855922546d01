#pragma once

#include <vector>

#include "rkcert/types.hpp"

namespace rkcert {

// Default tolerances. Sign decisions on eigenvalues scale the base tolerance
// by max(1, ||m||_2); symmetry and square-root residuals are tighter because
// dense eigenroutines deliver ~1e-13 backward error at the sizes handled here.
inline constexpr double kEigTol = 1e-9;
inline constexpr double kSymTol = 1e-12;
inline constexpr double kLyapTol = 1e-10;

struct HermitianSplit {
    ComplexMatrix h;  // Hermitian part (m + m*)/2
    ComplexMatrix s;  // skew-Hermitian part (m - m*)/2
};

enum class StabilityTag { AsymptoticallyStable, LyapunovStableNotAS, Unstable };

std::string to_string(StabilityTag tag);

struct StabilityClass {
    StabilityTag tag;
    double spectralAbscissa = 0.0;  // max Re(lambda)
    bool defectiveImagEigs = false;
};

struct LyapunovCertificate {
    ComplexMatrix p;  // Hermitian positive definite weight
    ComplexMatrix q;  // residual -(m* p + p m)
    bool strict = false;
};

void require_square(const ComplexMatrix& m, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);
bool is_hermitian(const ComplexMatrix& m, double tol = kSymTol);

/// Largest / smallest eigenvalue of a Hermitian matrix.
double max_hermitian_eigenvalue(const ComplexMatrix& h);
double min_hermitian_eigenvalue(const ComplexMatrix& h);

HermitianSplit hermitian_split(const ComplexMatrix& m);

/// Eigenvalue-based stability classification. Imaginary-axis eigenvalues are
/// clustered and each cluster's geometric multiplicity (rank deficiency of
/// m - lambda I) is compared against its size to detect defectiveness.
StabilityClass classify_stability(const ComplexMatrix& m, double tol = kEigTol);

/// True iff the largest eigenvalue of the Hermitian part is <= tol (scaled).
bool is_semidissipative(const ComplexMatrix& m, double tol = kEigTol);

/// Solve m* P + P m = -q for Hermitian P > 0. Requires m asymptotically
/// stable and q Hermitian positive definite. Schur reduction internally.
ComplexMatrix solve_lyapunov(const ComplexMatrix& m, const ComplexMatrix& q);

/// True iff p > 0 and -(m* p + p m) is positive semi-definite (strict:
/// positive definite) under the tolerance band convention.
bool verify_lyapunov(const ComplexMatrix& m, const ComplexMatrix& p, bool strict,
                     double tol = kEigTol);

/// Hermitian S > 0 with S*S = p; p must be Hermitian positive definite.
ComplexMatrix hpd_sqrt(const ComplexMatrix& p);

/// Inverse square root p^{-1/2} of a Hermitian positive definite matrix.
ComplexMatrix hpd_inverse_sqrt(const ComplexMatrix& p);

/// Square root of a Hermitian positive SEMI-definite matrix. Eigenvalues
/// below tol*max(1,||p||) are treated as exact zeros, so directions in the
/// numerical kernel map to zero instead of to sqrt(rounding noise).
ComplexMatrix psd_sqrt(const ComplexMatrix& p, double tol = kSymTol);

/// P^{1/2} m P^{-1/2}; semi-dissipative whenever (m, P) satisfies the
/// Lyapunov inequality, dissipative when the inequality is strict.
ComplexMatrix transform_to_dissipative(const ComplexMatrix& m, const ComplexMatrix& p);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// e^{t m} for t >= 0.
ComplexMatrix matrix_exponential(const ComplexMatrix& m, double t);

}  // namespace rkcert
