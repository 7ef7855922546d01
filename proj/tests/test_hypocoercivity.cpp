#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "rkcert/catalog.hpp"
#include "rkcert/hypocoercivity.hpp"
#include "rkcert/linalg.hpp"
#include "support/generators.hpp"

using namespace rkcert;
namespace rt = rkcert::testing;

namespace {

std::vector<double> subdiagonal_singular_values(const StaircaseForm& sf) {
    std::vector<double> out;
    int rowOff = sf.blockSizes[0];
    int colOff = 0;
    for (size_t i = 1; i + 1 < sf.blockSizes.size(); ++i) {
        const int rows = sf.blockSizes[i];
        const int cols = sf.blockSizes[i - 1];
        if (rows == 0) break;
        Eigen::JacobiSVD<ComplexMatrix> svd(sf.jT.block(rowOff, colOff, rows, cols));
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
            out.push_back(svd.singularValues()(k));
        colOff += cols;
        rowOff += rows;
    }
    return out;
}

/// Does some eigenvector of m_S lie in the kernel of m_H? (an eigenvalue of a
/// semi-dissipative matrix sits on the imaginary axis exactly in that case)
bool skew_eigenvector_in_kernel(const ComplexMatrix& m, double tol) {
    const HermitianSplit split = hermitian_split(m);
    const ComplexMatrix hermitianized = Complex(0, 1) * split.s;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitianized);
    const Eigen::VectorXd vals = es.eigenvalues();
    const Eigen::Index n = m.rows();
    const double radius = 1e-8 * std::max(1.0, spectral_norm(m));
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (used[static_cast<size_t>(i)]) continue;
        std::vector<Eigen::Index> cluster{i};
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (!used[static_cast<size_t>(j)] && std::abs(vals(i) - vals(j)) <= radius) {
                cluster.push_back(j);
                used[static_cast<size_t>(j)] = true;
            }
        }
        ComplexMatrix basis(n, static_cast<Eigen::Index>(cluster.size()));
        for (size_t k = 0; k < cluster.size(); ++k)
            basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cluster[k]);
        Eigen::JacobiSVD<ComplexMatrix> svd(split.h * basis);
        const double sigMin = svd.singularValues()(svd.singularValues().size() - 1);
        if (sigMin <= tol) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("definitional index of -I is 0 with T_0 = -I") {
    const HCCertificate cert = hc_index_definitional(minus_identity(3));
    REQUIRE(cert.mHC.has_value());
    CHECK(*cert.mHC == 0);
    REQUIRE(cert.tChainMaxEigs.size() == 1);
    CHECK(cert.tChainMaxEigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("definitional index of the paper fixtures") {
    const HCCertificate sunshu = hc_index_definitional(sun_shu_matrix());
    REQUIRE(sunshu.mHC.has_value());
    CHECK(*sunshu.mHC == 2);
    // T_0, T_1 are only semi-definite; T_2 is strictly negative definite
    CHECK(sunshu.tChainMaxEigs[0] >= -1e-9);
    CHECK(sunshu.tChainMaxEigs[1] >= -1e-9);
    CHECK(sunshu.tChainMaxEigs[2] < -1e-2);

    const HCCertificate lt = hc_index_definitional(levy_tadmor_matrix());
    REQUIRE(lt.mHC.has_value());
    CHECK(*lt.mHC == 4);
    CHECK(lt.tChainMaxEigs[4] < -0.5);
}

TEST_CASE("skew-Hermitian matrices have no finite index") {
    ComplexMatrix rot(2, 2);
    rot << 0, 1, -1, 0;
    const HCCertificate cert = hc_index_definitional(rot);
    CHECK(!cert.mHC.has_value());
}

TEST_CASE("definitional index rejects non-semi-dissipative input") {
    CHECK_THROWS_AS(hc_index_definitional(ComplexMatrix::Identity(2, 2)), InputError);
}

TEST_CASE("definitional index is invariant under positive scaling") {
    for (double alpha : {1e-3, 1.0, 1e3}) {
        CHECK(*hc_index_definitional(alpha * sun_shu_matrix()).mHC == 2);
        CHECK(*hc_index_definitional(alpha * levy_tadmor_matrix()).mHC == 4);
    }
}

TEST_CASE("staircase with nonsingular R is the identity form") {
    auto rng = rt::make_rng(10);
    const ComplexMatrix j = rt::random_skew(3, rng);
    const StaircaseForm sf = staircase(j, -ComplexMatrix::Identity(3, 3));
    CHECK(sf.r == 2);
    CHECK(sf.blockSizes == std::vector<int>{3, 0});
    CHECK((sf.v - ComplexMatrix::Identity(3, 3)).norm() <= 1e-14);
    CHECK((sf.jT - j).norm() <= 1e-14);
}

TEST_CASE("staircase of the Sun-Shu split matches the documented reduction") {
    const HermitianSplit split = hermitian_split(sun_shu_matrix());
    const StaircaseForm sf = staircase(split.s, split.h);
    CHECK(sf.r == 4);
    CHECK(sf.blockSizes == std::vector<int>{1, 1, 1, 0});

    // invariant quantities of the reduction: R_1 spectrum and coupling
    // singular values (2 sqrt(6)/3 and sqrt(3)/3)
    CHECK(sf.rT(0, 0).real() == doctest::Approx(-3.0).epsilon(1e-10));
    const std::vector<double> sig = subdiagonal_singular_values(sf);
    REQUIRE(sig.size() == 2);
    CHECK(sig[0] == doctest::Approx(2.0 * std::sqrt(6.0) / 3.0).epsilon(1e-10));
    CHECK(sig[1] == doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-10));
}

TEST_CASE("staircase of the Levy-Tadmor split matches the documented reduction") {
    const HermitianSplit split = hermitian_split(levy_tadmor_matrix());
    const StaircaseForm sf = staircase(split.s, split.h);
    CHECK(sf.r == 6);
    CHECK(sf.blockSizes == std::vector<int>{1, 1, 1, 1, 1, 0});
    CHECK(sf.rT(0, 0).real() == doctest::Approx(-25.0).epsilon(1e-10));
    const std::vector<double> sig = subdiagonal_singular_values(sf);
    REQUIRE(sig.size() == 4);
    CHECK(sig[0] == doctest::Approx(10.0 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(sig[1] == doctest::Approx(std::sqrt(35.0)).epsilon(1e-10));
    CHECK(sig[2] == doctest::Approx(4.0 * std::sqrt(35.0) / 7.0).epsilon(1e-10));
    CHECK(sig[3] == doctest::Approx(5.0 / std::sqrt(7.0)).epsilon(1e-10));
}

TEST_CASE("staircase validates its inputs") {
    const ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    CHECK_THROWS_AS(staircase(zero, zero), InputError);  // r = 0
    ComplexMatrix notSkew(2, 2);
    notSkew << 1, 0, 0, 1;
    CHECK_THROWS_AS(staircase(notSkew, -ComplexMatrix::Identity(2, 2)), InputError);
    ComplexMatrix notHerm(2, 2);
    notHerm << 0, 1, 0, 0;
    auto rng = rt::make_rng(11);
    CHECK_THROWS_AS(staircase(rt::random_skew(2, rng), notHerm), InputError);
}

TEST_CASE("staircase form invariants on random semi-dissipative matrices") {
    auto rng = rt::make_rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int idx = static_cast<int>(rng() % 3);
        const ComplexMatrix m = rt::random_hc_instance(n, std::min(idx, n - 1), rng);
        const HermitianSplit split = hermitian_split(m);
        const StaircaseForm sf = staircase(split.s, split.h);

        // unitarity and reconstruction
        const Eigen::Index dim = m.rows();
        CHECK((sf.v * sf.v.adjoint() - ComplexMatrix::Identity(dim, dim)).norm() <= 1e-12);
        CHECK(spectral_norm(sf.v.adjoint() * (sf.jT + sf.rT) * sf.v - m) <=
              1e-10 * spectral_norm(m));

        // block sizes: stairs positive and nonincreasing, sum n
        int total = 0;
        for (size_t i = 0; i + 1 < sf.blockSizes.size(); ++i) {
            CHECK(sf.blockSizes[i] > 0);
            if (i > 0) CHECK(sf.blockSizes[i] <= sf.blockSizes[i - 1]);
        }
        for (int b : sf.blockSizes) total += b;
        CHECK(total == static_cast<int>(dim));

        // rT is diag(R_1, 0...) with R_1 definite
        const int n1 = sf.blockSizes[0];
        CHECK(max_hermitian_eigenvalue(sf.rT.topLeftCorner(n1, n1)) < -1e-6);
        CHECK(sf.rT.bottomRightCorner(dim - n1, dim - n1).norm() <= 1e-10 * spectral_norm(m));

        // jT block tridiagonal: entries outside the tridiagonal band vanish
        int rowOff = 0;
        std::vector<int> offsets;
        for (int b : sf.blockSizes) {
            offsets.push_back(rowOff);
            rowOff += b;
        }
        for (size_t bi = 0; bi < sf.blockSizes.size(); ++bi) {
            for (size_t bj = 0; bj + 1 < bi; ++bj) {
                const auto blk = sf.jT.block(offsets[bi], offsets[bj], sf.blockSizes[bi],
                                             sf.blockSizes[bj]);
                CHECK(blk.norm() <= 1e-9 * spectral_norm(m));
            }
        }
        // the trailing block is decoupled entirely
        const int nr = sf.blockSizes.back();
        if (nr > 0) {
            CHECK(sf.jT.block(offsets.back(), 0, nr, dim - nr).norm() <=
                  1e-9 * spectral_norm(m));
        }
    }
}

TEST_CASE("hc_index_staircase golden values") {
    CHECK(hc_index_staircase(sun_shu_matrix()) == 2);
    CHECK(hc_index_staircase(levy_tadmor_matrix()) == 4);
    CHECK(hc_index_staircase(minus_identity(3)) == 0);
}

TEST_CASE("hc_index_staircase error paths") {
    ComplexMatrix rot(2, 2);
    rot << 0, 1, -1, 0;
    CHECK_THROWS_AS(hc_index_staircase(rot), InputError);  // Hermitian part zero

    ComplexMatrix mixed(2, 2);
    mixed << -1, 0, 0, Complex(0, 1);
    try {
        hc_index_staircase(mixed);
        FAIL("expected NotAsymptoticallyStable");
    } catch (const NotAsymptoticallyStable& e) {
        REQUIRE(e.residualBlock.rows() == 1);
        CHECK(std::abs(e.residualBlock(0, 0) - Complex(0, 1)) <= 1e-12);
    }
}

TEST_CASE("block_diagonalize examples") {
    ComplexMatrix skewDiag(2, 2);
    skewDiag << Complex(0, 1), 0, 0, Complex(0, -1);
    const BlockDiagonalForm bd1 = block_diagonalize(skewDiag);
    CHECK(!bd1.l1.has_value());
    REQUIRE(bd1.l2.has_value());
    CHECK((*bd1.l2 - skewDiag).norm() <= 1e-14);

    const BlockDiagonalForm bd2 = block_diagonalize(sun_shu_matrix());
    REQUIRE(bd2.l1.has_value());
    CHECK(bd2.l1->rows() == 3);
    CHECK(!bd2.l2.has_value());

    ComplexMatrix mixed(2, 2);
    mixed << -1, 0, 0, Complex(0, 1);
    const BlockDiagonalForm bd3 = block_diagonalize(mixed);
    REQUIRE(bd3.l1.has_value());
    REQUIRE(bd3.l2.has_value());
    CHECK(bd3.l1->rows() == 1);
    CHECK(std::abs((*bd3.l1)(0, 0) - Complex(-1, 0)) <= 1e-12);
    CHECK(std::abs((*bd3.l2)(0, 0) - Complex(0, 1)) <= 1e-12);
}

TEST_CASE("block parts classify as stable and skew-Hermitian") {
    auto rng = rt::make_rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const ComplexMatrix m = rt::random_semidissipative(n, 1 + static_cast<int>(rng() % n), rng);
        const BlockDiagonalForm bd = block_diagonalize(m);
        const Eigen::Index dim = m.rows();
        ComplexMatrix rebuilt = ComplexMatrix::Zero(dim, dim);
        int off = 0;
        if (bd.l1) {
            CHECK(classify_stability(*bd.l1).tag == StabilityTag::AsymptoticallyStable);
            CHECK(is_semidissipative(*bd.l1));
            rebuilt.topLeftCorner(bd.l1->rows(), bd.l1->cols()) = *bd.l1;
            off = static_cast<int>(bd.l1->rows());
        }
        if (bd.l2) {
            CHECK((*bd.l2 + bd.l2->adjoint()).norm() <= 1e-9 * (1.0 + spectral_norm(m)));
            rebuilt.block(off, off, bd.l2->rows(), bd.l2->cols()) = *bd.l2;
        }
        CHECK(spectral_norm(bd.v * m * bd.v.adjoint() - rebuilt) <=
              1e-9 * (1.0 + spectral_norm(m)));
    }
}

TEST_CASE("witness_vector examples") {
    const ComplexVector u0 = witness_vector(minus_identity(3), 0);
    CHECK(u0.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const ComplexMatrix m = sun_shu_matrix();
    const ComplexVector w = witness_vector(m, 2);
    const HermitianSplit split = hermitian_split(m);
    const ComplexMatrix sq = psd_sqrt(-split.h);
    CHECK((sq * w).norm() <= 1e-9);
    CHECK((sq * split.s * w).norm() <= 1e-9);
    CHECK((sq * split.s * split.s * w).norm() > 1e-6);

    // the kernel of T_1 is one-dimensional: span{(1,-2,1)/sqrt(6)}
    ComplexVector exact(3);
    exact << 1, -2, 1;
    exact /= exact.norm();
    CHECK(std::abs(w.dot(exact)) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(witness_vector(m, 3), WitnessNotFound);
}

TEST_CASE("oracle agreement: definitional vs staircase index") {
    CHECK(*hc_index_definitional(sun_shu_matrix()).mHC == hc_index_staircase(sun_shu_matrix()));
    CHECK(*hc_index_definitional(levy_tadmor_matrix()).mHC ==
          hc_index_staircase(levy_tadmor_matrix()));

    auto rng = rt::make_rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const int target = static_cast<int>(rng() % 5);
        const int n = target + 1 + static_cast<int>(rng() % (12 - target));
        const ComplexMatrix m = rt::random_hc_instance(n, target, rng);
        const HCCertificate cert = hc_index_definitional(m);
        REQUIRE(cert.mHC.has_value());
        CHECK(*cert.mHC == target);
        CHECK(hc_index_staircase(m) == *cert.mHC);
    }
}

TEST_CASE("index is invariant under unitary congruence") {
    auto rng = rt::make_rng(15);
    for (int trial = 0; trial < 25; ++trial) {
        const int target = static_cast<int>(rng() % 4);
        const int n = target + 2 + static_cast<int>(rng() % 6);
        const ComplexMatrix m = rt::random_hc_instance(n, target, rng);
        const ComplexMatrix u = rt::random_unitary(n, rng);
        CHECK(*hc_index_definitional(u * m * u.adjoint()).mHC ==
              *hc_index_definitional(m).mHC);
    }
}

TEST_CASE("border characterization of imaginary-axis eigenvalues") {
    auto rng = rt::make_rng(16);
    // negative instances: asymptotically stable constructions
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const ComplexMatrix m = rt::random_hc_instance(n, static_cast<int>(rng() % 3), rng);
        CHECK(classify_stability(m).tag == StabilityTag::AsymptoticallyStable);
        CHECK(!skew_eigenvector_in_kernel(m, 1e-7));
    }
    // positive instances: embed a decoupled skew block
    for (int trial = 0; trial < 15; ++trial) {
        const int n1 = 2 + static_cast<int>(rng() % 4);
        const int n2 = 1 + static_cast<int>(rng() % 3);
        const ComplexMatrix stable = rt::random_hc_instance(n1, 1, rng);
        const ComplexMatrix skew = rt::random_skew(n2, rng);
        ComplexMatrix m = ComplexMatrix::Zero(n1 + n2, n1 + n2);
        m.topLeftCorner(n1, n1) = stable;
        m.bottomRightCorner(n2, n2) = skew;
        const ComplexMatrix u = rt::random_unitary(n1 + n2, rng);
        m = u * m * u.adjoint();
        CHECK(classify_stability(m).tag != StabilityTag::AsymptoticallyStable);
        CHECK(skew_eigenvector_in_kernel(m, 1e-7));
    }
}

TEST_CASE("finite index iff asymptotically stable, for semi-dissipative matrices") {
    auto rng = rt::make_rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        ComplexMatrix m;
        if (trial % 2 == 0) {
            m = rt::random_hc_instance(n, static_cast<int>(rng() % std::min(3, n)), rng);
        } else {
            const int n2 = 1 + static_cast<int>(rng() % 2);
            ComplexMatrix block = ComplexMatrix::Zero(n + n2, n + n2);
            block.topLeftCorner(n, n) = rt::random_hc_instance(n, 1, rng);
            block.bottomRightCorner(n2, n2) = rt::random_skew(n2, rng);
            const ComplexMatrix u = rt::random_unitary(n + n2, rng);
            m = u * block * u.adjoint();
        }
        const bool finite = hc_index_definitional(m).mHC.has_value();
        const bool stable =
            classify_stability(m).tag == StabilityTag::AsymptoticallyStable;
        CHECK(finite == stable);
    }
}
