#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rkcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Three-valued conclusion used wherever a strict inequality decides a verdict
/// and values inside the marginal band must not be coerced to either side.
enum class Conclusion { Yes, No, Undecided };

std::string to_string(Conclusion c);

/// Sign of a real quantity relative to a tolerance band:
/// Negative  value <= -tol,  Positive  value >= +tol,  Marginal otherwise.
enum class SignClass { Negative, Marginal, Positive };

inline SignClass classify_sign(double value, double tol) {
    if (value <= -tol) return SignClass::Negative;
    if (value >= tol) return SignClass::Positive;
    return SignClass::Marginal;
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-square or size-mismatched input.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input violates a documented precondition (non-Hermitian weight, not
/// semi-dissipative, non-unit witness, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel (eigensolver, Schur) failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Spectrum does not admit the requested operation (e.g. Lyapunov solve on a
/// matrix that is not asymptotically stable).
class SpectrumError : public Error {
public:
    using Error::Error;
};

/// Butcher coefficients are not strictly lower triangular.
class NotExplicitError : public Error {
public:
    using Error::Error;
};

/// Stability polynomial has R(0) != 1.
class InconsistentSchemeError : public Error {
public:
    using Error::Error;
};

/// No unit vector satisfies the witness conditions at the requested level;
/// signals that the level exceeds the hypocoercivity index.
class WitnessNotFound : public Error {
public:
    using Error::Error;
};

/// Fewer usable sample points than a fit needs.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Staircase reduction found a nonempty decoupled skew-Hermitian block, i.e.
/// the matrix is not asymptotically stable. Carries that residual block.
class NotAsymptoticallyStable : public Error {
public:
    NotAsymptoticallyStable(const std::string& what, ComplexMatrix residual)
        : Error(what), residualBlock(std::move(residual)) {}

    ComplexMatrix residualBlock;
};

}  // namespace rkcert
