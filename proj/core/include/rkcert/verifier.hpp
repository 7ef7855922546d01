#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rkcert/rk.hpp"
#include "rkcert/types.hpp"

namespace rkcert {

// A spectral norm must exceed 1 by more than accumulated rounding before it
// counts as a violation.
inline constexpr double kViolationTol = 1e-11;

// Defect norms below this floor are dominated by rounding in G and Q and are
// excluded from order fits.
inline constexpr double kDefectFloor = 1e-13;

/// Spectral-norm sweep of R(tau L) over a grid, optionally in a weighted norm
/// ||P^{1/2} R(tau L) P^{-1/2}||.
struct SweepResult {
    std::vector<double> grid;
    std::vector<double> norms;
    std::optional<std::pair<double, double>> firstViolation;  // (tau, norm)
    double maxExcess = 0.0;                                   // max(norm) - 1
};

/// Least-squares power-law fit of 1 - f(tau) on a log-log window.
struct ExponentFit {
    double aHat = 0.0;      // fitted exponent
    double cHat = 0.0;      // fitted prefactor
    double residual = 0.0;  // RMS residual in log space
    double windowLo = 0.0;  // first and last tau actually used
    double windowHi = 0.0;
    int pointsUsed = 0;
};

/// Sampling window for exponent fits. Points are kept only while
/// 1 - f(tau) lies inside [bandLo, bandHi]; the band floor sits above the
/// double-precision noise of the spectral norm, the ceiling keeps the
/// power-law regime, and together they realize the window shift needed for
/// high exponents.
struct FitWindow {
    double tauLo = 0.0;
    double tauHi = 0.0;
    int points = 600;
    double bandLo = 1e-11;
    double bandHi = 1e-4;
};

/// ||G(tau) - Q(tau)||_2 with G = R(tau L)* R(tau L) and Q = e^{tau L*} e^{tau L}
/// computed independently, the fitted decay order, and the leading
/// coefficient measured against |c_{p+1} - 1| ||L^{p+1} + (L*)^{p+1}|| / (p+1)!.
struct GramDefect {
    std::vector<double> taus;
    std::vector<double> defectNorms;
    double fittedOrder = 0.0;            // NaN when no usable points
    double fittedCoefficient = 0.0;      // fixed-exponent extrapolation to tau = 0
    double predictedLeadingCoefficient = 0.0;
    bool degenerate = false;             // leading matrix ~ 0: true order >= p+2
};

struct QuadraticFormCheck {
    double lhs = 0.0;   // u0* (L^{p+1} + (L*)^{p+1}) u0, p = 2*level
    double rhs = 0.0;   // -2 (-1)^level ||(-L_H)^{1/2} L_S^level u0||^2
    bool match = false;
    double witnessNormSkew = 0.0;  // ||(-L_H)^{1/2} L_S^level u0||
    double witnessNormFull = 0.0;  // ||(-L_H)^{1/2} L^level u0||
};

struct Counterexample {
    double tau = 0.0;
    ComplexVector u;        // initial vector realizing the growth
    double growth = 0.0;    // ||R(tau L) u|| / ||u|| - 1 (weighted norm if weighted)
};

/// points log-spaced values in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int points);

/// Default sweep grid: points log-spaced in [1e-6, 1e-1] / ||m||_2.
std::vector<double> default_grid(const ComplexMatrix& m, int points = 200);

SweepResult norm_sweep(const StabilityPolynomial& poly, const ComplexMatrix& m,
                       const std::vector<double>& grid,
                       const std::optional<ComplexMatrix>& weight = std::nullopt);

/// Fit 1 - f(tau) ~ c tau^a on the window's band. Throws
/// InsufficientDataError with fewer than 4 usable points and InputError if f
/// exceeds 1 + kViolationTol inside the window.
ExponentFit fit_short_time_exponent(const std::function<double(double)>& f,
                                    const FitWindow& window);

/// Exponent fit of tau -> ||e^{tau m}||_2 with an automatic window spanning
/// [1e-13, 10] / ||m||_2.
ExponentFit fit_exponential_norm_decay(const ComplexMatrix& m);

/// Grid must lie in (0, 0.1 / ||m||_2].
GramDefect gram_defect(const StabilityPolynomial& poly, const ComplexMatrix& m,
                       const std::vector<double>& grid);

/// Checks the quadratic-form identity behind the even-order non-stability
/// argument on a witness vector from witness_vector(m, level).
QuadraticFormCheck quadratic_form_identity(const ComplexMatrix& m, const ComplexVector& u0,
                                           int level);

/// Dominant-singular-vector search for a norm violation over the grid;
/// returns the grid point maximizing the growth ratio if it exceeds
/// 1 + kViolationTol.
std::optional<Counterexample> counterexample_search(
    const StabilityPolynomial& poly, const ComplexMatrix& m,
    const std::vector<double>& grid,
    const std::optional<ComplexMatrix>& weight = std::nullopt);

}  // namespace rkcert
