#include "rkcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace rkcert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double scaled(double tol, double norm) { return tol * std::max(1.0, norm); }

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eig(const ComplexMatrix& h,
                                                           bool vectors) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es;
    es.compute(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver did not converge");
    return es;
}

}  // namespace

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::Yes: return "yes";
        case Conclusion::No: return "no";
        default: return "undecided";
    }
}

std::string to_string(StabilityTag tag) {
    switch (tag) {
        case StabilityTag::AsymptoticallyStable: return "asymptotically-stable";
        case StabilityTag::LyapunovStableNotAS: return "lyapunov-stable";
        default: return "unstable";
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionError(std::string(what) + ": matrix must be square and nonempty, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite())
        throw InputError(std::string(what) + ": matrix has non-finite entries");
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= scaled(tol, m.norm());
}

double max_hermitian_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eig(h, false).eigenvalues().maxCoeff();
}

double min_hermitian_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eig(h, false).eigenvalues().minCoeff();
}

HermitianSplit hermitian_split(const ComplexMatrix& m) {
    require_square(m, "hermitian_split");
    require_finite(m, "hermitian_split");
    HermitianSplit out;
    out.h = (m + m.adjoint()) / 2.0;
    out.s = (m - m.adjoint()) / 2.0;
    return out;
}

StabilityClass classify_stability(const ComplexMatrix& m, double tol) {
    require_square(m, "classify_stability");
    require_finite(m, "classify_stability");

    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("classify_stability: eigensolver did not converge");
    const Eigen::VectorXcd eigs = es.eigenvalues();
    const double scale = std::max(1.0, spectral_norm(m));
    const double teff = tol * scale;

    StabilityClass out;
    out.spectralAbscissa = eigs.real().maxCoeff();

    if (out.spectralAbscissa < -teff) {
        out.tag = StabilityTag::AsymptoticallyStable;
        return out;
    }

    // Cluster eigenvalues and compare geometric against algebraic multiplicity
    // near the imaginary axis. A defective pair splits its eigenvalues by
    // ~sqrt(eps)*||m||, so the cluster radius (and the matching rank
    // threshold) must sit above that, not at the sign-decision tolerance.
    const double radius = std::max(teff, 50.0 * std::sqrt(kEps) * scale);
    const Eigen::Index n = m.rows();
    std::vector<int> cluster(n, -1);
    int nClusters = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = nClusters;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (cluster[j] < 0 && std::abs(eigs(i) - eigs(j)) <= radius) cluster[j] = nClusters;
        }
        ++nClusters;
    }

    for (int cid = 0; cid < nClusters; ++cid) {
        Complex mean = 0.0;
        int count = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (cluster[i] == cid) {
                mean += eigs(i);
                ++count;
            }
        }
        mean /= static_cast<double>(count);
        if (count < 2 || std::abs(mean.real()) > radius) continue;

        ComplexMatrix shifted = m - mean * ComplexMatrix::Identity(n, n);
        Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
        const int deficiency =
            static_cast<int>((svd.singularValues().array() <= radius).count());
        if (deficiency < count) {
            out.defectiveImagEigs = true;
            break;
        }
    }

    if (out.spectralAbscissa > teff || out.defectiveImagEigs)
        out.tag = StabilityTag::Unstable;
    else
        out.tag = StabilityTag::LyapunovStableNotAS;
    return out;
}

bool is_semidissipative(const ComplexMatrix& m, double tol) {
    const HermitianSplit split = hermitian_split(m);
    return max_hermitian_eigenvalue(split.h) <= scaled(tol, spectral_norm(m));
}

ComplexMatrix solve_lyapunov(const ComplexMatrix& m, const ComplexMatrix& q) {
    require_square(m, "solve_lyapunov");
    require_finite(m, "solve_lyapunov");
    if (q.rows() != m.rows() || q.cols() != m.cols())
        throw DimensionError("solve_lyapunov: q must match the dimension of m");
    if (!is_hermitian(q)) throw InputError("solve_lyapunov: q must be Hermitian");
    if (min_hermitian_eigenvalue((q + q.adjoint()) / 2.0) <= 0.0)
        throw InputError("solve_lyapunov: q must be positive definite");

    Eigen::ComplexSchur<ComplexMatrix> schur(m);
    if (schur.info() != Eigen::Success)
        throw NumericalError("solve_lyapunov: Schur decomposition did not converge");
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& u = schur.matrixU();

    const Eigen::Index n = m.rows();
    const double abscissa = t.diagonal().real().maxCoeff();
    if (abscissa >= -scaled(kEigTol, spectral_norm(m)))
        throw SpectrumError("solve_lyapunov: matrix is not asymptotically stable "
                            "(spectral abscissa = " + std::to_string(abscissa) + ")");

    // m = U T U*.  T* X + X T = -(U* q U), forward substitution over the
    // upper triangular T, then P = U X U*.
    ComplexMatrix rhs = -(u.adjoint() * q * u);
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex acc = rhs(i, j);
            for (Eigen::Index k = 0; k < i; ++k) acc -= std::conj(t(k, i)) * x(k, j);
            for (Eigen::Index k = 0; k < j; ++k) acc -= x(i, k) * t(k, j);
            x(i, j) = acc / (std::conj(t(i, i)) + t(j, j));
        }
    }
    ComplexMatrix p = u * x * u.adjoint();
    return (p + p.adjoint()) / 2.0;
}

bool verify_lyapunov(const ComplexMatrix& m, const ComplexMatrix& p, bool strict,
                     double tol) {
    require_square(m, "verify_lyapunov");
    if (p.rows() != m.rows() || p.cols() != m.cols())
        throw DimensionError("verify_lyapunov: p must match the dimension of m");
    if (!is_hermitian(p)) throw InputError("verify_lyapunov: p must be Hermitian");

    const ComplexMatrix ph = (p + p.adjoint()) / 2.0;
    if (min_hermitian_eigenvalue(ph) <= scaled(tol, spectral_norm(ph))) return false;

    ComplexMatrix residual = -(m.adjoint() * ph + ph * m);
    residual = (residual + residual.adjoint()) / 2.0;
    const double lammin = min_hermitian_eigenvalue(residual);
    const double teff = scaled(tol, spectral_norm(residual));
    return strict ? lammin >= teff : lammin >= -teff;
}

ComplexMatrix hpd_sqrt(const ComplexMatrix& p) {
    require_square(p, "hpd_sqrt");
    require_finite(p, "hpd_sqrt");
    if (!is_hermitian(p)) throw InputError("hpd_sqrt: matrix must be Hermitian");
    auto es = hermitian_eig((p + p.adjoint()) / 2.0, true);
    const double lammin = es.eigenvalues().minCoeff();
    if (lammin <= scaled(kEigTol, es.eigenvalues().cwiseAbs().maxCoeff()))
        throw InputError("hpd_sqrt: matrix is not positive definite "
                         "(smallest eigenvalue = " + std::to_string(lammin) + ")");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

ComplexMatrix hpd_inverse_sqrt(const ComplexMatrix& p) {
    require_square(p, "hpd_inverse_sqrt");
    require_finite(p, "hpd_inverse_sqrt");
    if (!is_hermitian(p)) throw InputError("hpd_inverse_sqrt: matrix must be Hermitian");
    auto es = hermitian_eig((p + p.adjoint()) / 2.0, true);
    const double lammin = es.eigenvalues().minCoeff();
    if (lammin <= scaled(kEigTol, es.eigenvalues().cwiseAbs().maxCoeff()))
        throw InputError("hpd_inverse_sqrt: matrix is not positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p, double tol) {
    require_square(p, "psd_sqrt");
    require_finite(p, "psd_sqrt");
    if (!is_hermitian(p)) throw InputError("psd_sqrt: matrix must be Hermitian");
    auto es = hermitian_eig((p + p.adjoint()) / 2.0, true);
    Eigen::VectorXd vals = es.eigenvalues();
    const double cut = scaled(tol, vals.cwiseAbs().maxCoeff());
    if (vals.minCoeff() < -cut)
        throw InputError("psd_sqrt: matrix is not positive semi-definite "
                         "(smallest eigenvalue = " + std::to_string(vals.minCoeff()) + ")");
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        vals(i) = vals(i) > cut ? std::sqrt(vals(i)) : 0.0;
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix transform_to_dissipative(const ComplexMatrix& m, const ComplexMatrix& p) {
    require_square(m, "transform_to_dissipative");
    if (p.rows() != m.rows() || p.cols() != m.cols())
        throw DimensionError("transform_to_dissipative: p must match the dimension of m");
    const ComplexMatrix s = hpd_sqrt(p);
    const ComplexMatrix si = hpd_inverse_sqrt(p);
    return s * m * si;
}

double spectral_norm(const ComplexMatrix& m) {
    require_finite(m, "spectral_norm");
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

ComplexMatrix matrix_exponential(const ComplexMatrix& m, double t) {
    require_square(m, "matrix_exponential");
    require_finite(m, "matrix_exponential");
    if (!(t >= 0.0)) throw InputError("matrix_exponential: t must be >= 0");
    return (t * m).exp();
}

}  // namespace rkcert
