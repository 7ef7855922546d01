#include "rkcert/hypocoercivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rkcert {

namespace {

void require_semidissipative(const ComplexMatrix& m, const char* what, double tol) {
    require_square(m, what);
    require_finite(m, what);
    const double lammax = max_hermitian_eigenvalue(hermitian_split(m).h);
    if (lammax > tol * std::max(1.0, spectral_norm(m)))
        throw InputError(std::string(what) +
                         ": matrix is not semi-dissipative (largest eigenvalue of the "
                         "Hermitian part = " + std::to_string(lammax) + ")");
}

/// Partial sum T_level = sum_{j<=level} S^j H (S*)^j.
ComplexMatrix t_chain_sum(const ComplexMatrix& h, const ComplexMatrix& s, int level) {
    const Eigen::Index n = h.rows();
    ComplexMatrix t = ComplexMatrix::Zero(n, n);
    ComplexMatrix spow = ComplexMatrix::Identity(n, n);
    for (int j = 0; j <= level; ++j) {
        t += spow * h * spow.adjoint();
        if (j < level) spow = s * spow;
    }
    return (t + t.adjoint()) / 2.0;
}

}  // namespace

HCCertificate hc_index_definitional(const ComplexMatrix& m, double tol, int maxM) {
    require_semidissipative(m, "hc_index_definitional", tol);

    const Eigen::Index n = m.rows();
    if (maxM < 0) maxM = static_cast<int>(n);

    const double nrm = spectral_norm(m);
    const ComplexMatrix scaledM = nrm > 0.0 ? ComplexMatrix(m / nrm) : m;
    const HermitianSplit hatSplit = hermitian_split(scaledM);
    const ComplexMatrix sqrtNegH = psd_sqrt(-hatSplit.h);

    const HermitianSplit split = hermitian_split(m);

    HCCertificate cert;
    ComplexMatrix tSum = ComplexMatrix::Zero(n, n);     // evidence chain, unscaled
    ComplexMatrix sPow = ComplexMatrix::Identity(n, n);
    ComplexMatrix sHatAdjPow = ComplexMatrix::Identity(n, n);
    ComplexMatrix stack(0, n);

    for (int level = 0; level <= maxM; ++level) {
        tSum += sPow * split.h * sPow.adjoint();
        cert.tChainMaxEigs.push_back(
            max_hermitian_eigenvalue((tSum + tSum.adjoint()) / 2.0));

        // T_level < 0 iff the stacked factor [(-L_H)^{1/2} (L_S^*)^j]_{j<=level}
        // of the scale-normalized matrix has full column rank.
        stack.conservativeResize(stack.rows() + n, Eigen::NoChange);
        stack.bottomRows(n) = sqrtNegH * sHatAdjPow;
        Eigen::JacobiSVD<ComplexMatrix> svd(stack);
        const double sigMax = svd.singularValues()(0);
        const double sigMin = svd.singularValues()(svd.singularValues().size() - 1);
        if (sigMin > tol * std::max(1.0, sigMax)) {
            cert.mHC = level;
            try {
                cert.witness = witness_vector(m, level, tol);
            } catch (const WitnessNotFound&) {
                // certificate stays valid without a witness
            }
            return cert;
        }

        sPow = split.s * sPow;
        sHatAdjPow = hatSplit.s.adjoint() * sHatAdjPow;
    }
    return cert;
}

StaircaseForm staircase(const ComplexMatrix& j, const ComplexMatrix& r, double tol) {
    require_square(j, "staircase");
    require_finite(j, "staircase");
    if (r.rows() != j.rows() || r.cols() != j.cols())
        throw DimensionError("staircase: j and r must have equal dimensions");
    require_finite(r, "staircase");
    const double jNorm = spectral_norm(j);
    const double rNorm = spectral_norm(r);
    if ((j + j.adjoint()).norm() > kSymTol * std::max(1.0, jNorm))
        throw InputError("staircase: j must be skew-Hermitian");
    if ((r - r.adjoint()).norm() > kSymTol * std::max(1.0, rNorm))
        throw InputError("staircase: r must be Hermitian");
    if (rNorm == 0.0) throw InputError("staircase: r must be nonzero");

    const Eigen::Index n = j.rows();
    StaircaseForm out;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((r + r.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
        throw NumericalError("staircase: eigensolver did not converge");
    const Eigen::VectorXd vals = es.eigenvalues();
    const double rankCut = static_cast<double>(n) * tol * vals.cwiseAbs().maxCoeff();

    RankDecision first;
    first.step = 0;
    first.threshold = rankCut;
    std::vector<Eigen::Index> rangeIdx, nullIdx;
    for (Eigen::Index i = 0; i < n; ++i) {
        first.singularValues.push_back(std::abs(vals(i)));
        (std::abs(vals(i)) > rankCut ? rangeIdx : nullIdx).push_back(i);
    }
    std::sort(first.singularValues.rbegin(), first.singularValues.rend());
    first.rank = static_cast<int>(rangeIdx.size());
    out.rankDecisions.push_back(first);

    if (first.rank == static_cast<int>(n)) {
        // R nonsingular: a single stair plus an empty trailing block, V = I.
        out.v = ComplexMatrix::Identity(n, n);
        out.blockSizes = {static_cast<int>(n), 0};
        out.r = 2;
        out.jT = j;
        out.rT = r;
        return out;
    }

    ComplexMatrix current(n, static_cast<Eigen::Index>(rangeIdx.size()));
    ComplexMatrix remainder(n, static_cast<Eigen::Index>(nullIdx.size()));
    for (Eigen::Index k = 0; k < current.cols(); ++k) current.col(k) = es.eigenvectors().col(rangeIdx[k]);
    for (Eigen::Index k = 0; k < remainder.cols(); ++k) remainder.col(k) = es.eigenvectors().col(nullIdx[k]);

    std::vector<ComplexMatrix> stairs{current};
    out.blockSizes.push_back(first.rank);

    // Compress the coupling of J from the last resolved stair into the
    // remainder; the numerical rank of that block is the next stair size.
    int step = 1;
    while (true) {
        if (remainder.cols() == 0) {
            out.blockSizes.push_back(0);
            break;
        }
        const ComplexMatrix coupling = remainder.adjoint() * j * stairs.back();
        Eigen::JacobiSVD<ComplexMatrix> svd(coupling, Eigen::ComputeFullU);
        const Eigen::VectorXd sig = svd.singularValues();
        const double cut = static_cast<double>(coupling.rows()) * tol *
                           (sig.size() > 0 ? sig(0) : 0.0);
        RankDecision dec;
        dec.step = step++;
        dec.threshold = cut;
        for (Eigen::Index i = 0; i < sig.size(); ++i) dec.singularValues.push_back(sig(i));
        dec.rank = static_cast<int>((sig.array() > cut).count());
        out.rankDecisions.push_back(dec);

        if (dec.rank == 0) {
            out.blockSizes.push_back(static_cast<int>(remainder.cols()));
            break;
        }
        stairs.push_back(remainder * svd.matrixU().leftCols(dec.rank));
        out.blockSizes.push_back(dec.rank);
        remainder = remainder * svd.matrixU().rightCols(remainder.cols() - dec.rank);
    }

    ComplexMatrix basis(n, n);
    Eigen::Index col = 0;
    for (const auto& stair : stairs) {
        basis.middleCols(col, stair.cols()) = stair;
        col += stair.cols();
    }
    if (remainder.cols() > 0 && out.blockSizes.back() > 0)
        basis.middleCols(col, remainder.cols()) = remainder;

    out.v = basis.adjoint();
    out.r = static_cast<int>(out.blockSizes.size());
    out.jT = out.v * j * out.v.adjoint();
    out.rT = out.v * r * out.v.adjoint();
    return out;
}

int hc_index_staircase(const ComplexMatrix& m, double tol) {
    require_semidissipative(m, "hc_index_staircase", kEigTol);
    const HermitianSplit split = hermitian_split(m);
    if (spectral_norm(split.h) == 0.0)
        throw InputError("hc_index_staircase: Hermitian part is zero (skew-Hermitian "
                         "matrices have no finite index)");

    const StaircaseForm sf = staircase(split.s, split.h, tol);
    const int nr = sf.blockSizes.back();
    if (nr > 0) {
        const Eigen::Index n = m.rows();
        throw NotAsymptoticallyStable(
            "hc_index_staircase: matrix is not asymptotically stable (decoupled "
            "skew-Hermitian block of size " + std::to_string(nr) + ")",
            sf.jT.bottomRightCorner(nr, nr));
    }
    return sf.r - 2;
}

BlockDiagonalForm block_diagonalize(const ComplexMatrix& m, double tol) {
    require_semidissipative(m, "block_diagonalize", kEigTol);
    const Eigen::Index n = m.rows();
    const HermitianSplit split = hermitian_split(m);

    BlockDiagonalForm out;
    if (spectral_norm(split.h) <= kSymTol * std::max(1.0, spectral_norm(m))) {
        out.v = ComplexMatrix::Identity(n, n);
        out.l2 = split.s;
        return out;
    }

    const StaircaseForm sf = staircase(split.s, split.h, tol);
    const int nr = sf.blockSizes.back();
    const Eigen::Index k = n - nr;
    const ComplexMatrix transformed = sf.jT + sf.rT;
    out.v = sf.v;
    out.l1 = transformed.topLeftCorner(k, k);
    if (nr > 0) out.l2 = transformed.bottomRightCorner(nr, nr);
    return out;
}

ComplexVector witness_vector(const ComplexMatrix& m, int level, double tol) {
    require_semidissipative(m, "witness_vector", tol);
    if (level < 0) throw InputError("witness_vector: level must be >= 0");

    const Eigen::Index n = m.rows();
    const HermitianSplit split = hermitian_split(m);
    const ComplexMatrix sqrtNegH = psd_sqrt(-split.h);

    // Kernel basis of T_{level-1}; level 0 uses the whole space (T_{-1} = 0).
    ComplexMatrix kernel;
    if (level == 0) {
        kernel = ComplexMatrix::Identity(n, n);
    } else {
        const ComplexMatrix t = t_chain_sum(split.h, split.s, level - 1);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(t);
        if (es.info() != Eigen::Success)
            throw NumericalError("witness_vector: eigensolver did not converge");
        const double cut = tol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(es.eigenvalues()(i)) <= cut) idx.push_back(i);
        if (idx.empty())
            throw WitnessNotFound("witness_vector: T_" + std::to_string(level - 1) +
                                  " has no numerical kernel (level exceeds the index)");
        kernel.resize(n, static_cast<Eigen::Index>(idx.size()));
        for (Eigen::Index k = 0; k < kernel.cols(); ++k)
            kernel.col(k) = es.eigenvectors().col(idx[k]);
    }

    ComplexMatrix sPow = ComplexMatrix::Identity(n, n);
    for (int j = 0; j < level; ++j) sPow = split.s * sPow;

    // Deterministic choice: maximize the violation signal over the kernel.
    const ComplexMatrix b = sqrtNegH * sPow * kernel;
    Eigen::JacobiSVD<ComplexMatrix> svd(b, Eigen::ComputeFullV);
    const double sigMax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    if (sigMax <= tol)
        throw WitnessNotFound("witness_vector: no kernel vector with nonvanishing "
                              "(-L_H)^{1/2} L_S^" + std::to_string(level) +
                              " image (level exceeds the index)");
    ComplexVector u0 = kernel * svd.matrixV().col(0);
    return u0 / u0.norm();
}

}  // namespace rkcert
