#include "rkcert/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "rkcert/hypocoercivity.hpp"
#include "rkcert/linalg.hpp"

namespace rkcert {

namespace {

struct WeightTransform {
    ComplexMatrix sqrt;     // P^{1/2}
    ComplexMatrix invSqrt;  // P^{-1/2}
};

WeightTransform make_weight(const ComplexMatrix& weight) {
    WeightTransform w;
    w.sqrt = hpd_sqrt(weight);
    w.invSqrt = hpd_inverse_sqrt(weight);
    return w;
}

void require_grid(const std::vector<double>& grid, const char* what) {
    if (grid.empty()) throw InputError(std::string(what) + ": grid is empty");
    double prev = 0.0;
    for (double tau : grid) {
        if (!(tau > prev))
            throw InputError(std::string(what) + ": grid must be positive and strictly increasing");
        prev = tau;
    }
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw InputError("log_grid: need 0 < lo < hi and at least 2 points");
    std::vector<double> grid(static_cast<size_t>(points));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        grid[static_cast<size_t>(i)] =
            std::exp(llo + (lhi - llo) * i / static_cast<double>(points - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> default_grid(const ComplexMatrix& m, int points) {
    const double nrm = spectral_norm(m);
    const double scale = nrm > 0.0 ? 1.0 / nrm : 1.0;
    return log_grid(1e-6 * scale, 1e-1 * scale, points);
}

SweepResult norm_sweep(const StabilityPolynomial& poly, const ComplexMatrix& m,
                       const std::vector<double>& grid,
                       const std::optional<ComplexMatrix>& weight) {
    require_square(m, "norm_sweep");
    require_finite(m, "norm_sweep");
    require_grid(grid, "norm_sweep");

    std::optional<WeightTransform> w;
    if (weight) w = make_weight(*weight);

    SweepResult out;
    out.grid = grid;
    out.norms.reserve(grid.size());
    out.maxExcess = -std::numeric_limits<double>::infinity();
    for (double tau : grid) {
        ComplexMatrix r = eval_poly_matrix(poly, m, tau);
        if (w) r = w->sqrt * r * w->invSqrt;
        const double norm = spectral_norm(r);
        out.norms.push_back(norm);
        out.maxExcess = std::max(out.maxExcess, norm - 1.0);
        if (!out.firstViolation && norm > 1.0 + kViolationTol)
            out.firstViolation = std::make_pair(tau, norm);
    }
    return out;
}

ExponentFit fit_short_time_exponent(const std::function<double(double)>& f,
                                    const FitWindow& window) {
    if (!(window.tauLo > 0.0) || !(window.tauHi > window.tauLo) || window.points < 4)
        throw InputError("fit_short_time_exponent: invalid window");
    if (!(window.bandLo > 0.0) || !(window.bandHi > window.bandLo))
        throw InputError("fit_short_time_exponent: invalid band");

    std::vector<double> xs, ys;
    double lo = 0.0, hi = 0.0;
    for (double tau : log_grid(window.tauLo, window.tauHi, window.points)) {
        const double value = f(tau);
        if (value > 1.0 + kViolationTol)
            throw InputError("fit_short_time_exponent: f exceeds 1 inside the window "
                             "(f(" + std::to_string(tau) + ") = " + std::to_string(value) + ")");
        const double decay = 1.0 - value;
        if (decay < window.bandLo || decay > window.bandHi) continue;
        if (xs.empty()) lo = tau;
        hi = tau;
        xs.push_back(std::log(tau));
        ys.push_back(std::log(decay));
    }
    if (xs.size() < 4)
        throw InsufficientDataError("fit_short_time_exponent: only " +
                                    std::to_string(xs.size()) + " usable points");

    const LineFit line = least_squares_line(xs, ys);
    ExponentFit fit;
    fit.aHat = line.slope;
    fit.cHat = std::exp(line.intercept);
    fit.residual = line.rms;
    fit.windowLo = lo;
    fit.windowHi = hi;
    fit.pointsUsed = static_cast<int>(xs.size());
    return fit;
}

ExponentFit fit_exponential_norm_decay(const ComplexMatrix& m) {
    require_square(m, "fit_exponential_norm_decay");
    const double nrm = spectral_norm(m);
    const double scale = nrm > 0.0 ? 1.0 / nrm : 1.0;
    FitWindow window;
    window.tauLo = 1e-13 * scale;
    window.tauHi = 10.0 * scale;
    return fit_short_time_exponent(
        [&m](double tau) { return spectral_norm(matrix_exponential(m, tau)); }, window);
}

GramDefect gram_defect(const StabilityPolynomial& poly, const ComplexMatrix& m,
                       const std::vector<double>& grid) {
    require_square(m, "gram_defect");
    require_finite(m, "gram_defect");
    require_grid(grid, "gram_defect");
    if (poly.p < 0) throw InputError("gram_defect: linear order not detected");
    const double nrm = spectral_norm(m);
    if (nrm > 0.0 && grid.back() > 0.1 / nrm * (1.0 + 1e-9))
        throw InputError("gram_defect: grid must stay within (0, 0.1 / ||m||]");

    GramDefect out;
    out.taus = grid;
    out.defectNorms.reserve(grid.size());
    for (double tau : grid) {
        const ComplexMatrix r = eval_poly_matrix(poly, m, tau);
        const ComplexMatrix e = matrix_exponential(m, tau);
        out.defectNorms.push_back(spectral_norm(r.adjoint() * r - e.adjoint() * e));
    }

    const int p = poly.p;
    const Eigen::Index n = m.rows();
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    for (int j = 0; j < p + 1; ++j) power = m * power;
    double factorial = 1.0;
    for (int j = 2; j <= p + 1; ++j) factorial *= j;
    const double ctilde = std::abs(poly.cAt(p + 1).real() - 1.0);
    const double leadNorm = spectral_norm(power + power.adjoint());
    out.predictedLeadingCoefficient = ctilde * leadNorm / factorial;

    const double degenerateScale = std::pow(std::max(nrm, 1.0), p + 1) / factorial;
    out.degenerate = out.predictedLeadingCoefficient <= 1e-12 * degenerateScale;

    std::vector<double> xs, ys, taus, ratios;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (out.defectNorms[i] <= kDefectFloor) continue;
        xs.push_back(std::log(grid[i]));
        ys.push_back(std::log(out.defectNorms[i]));
        taus.push_back(grid[i]);
        ratios.push_back(out.defectNorms[i] / std::pow(grid[i], p + 1));
    }
    if (xs.size() < 4) {
        out.fittedOrder = std::numeric_limits<double>::quiet_NaN();
        out.fittedCoefficient = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.fittedOrder = least_squares_line(xs, ys).slope;
    // Leading coefficient: fix the exponent at p+1 and extrapolate the ratio
    // D/tau^{p+1} linearly to tau = 0; the free log-log intercept is biased by
    // the next-order term at any tau reachable above the noise floor.
    out.fittedCoefficient = least_squares_line(taus, ratios).intercept;
    return out;
}

QuadraticFormCheck quadratic_form_identity(const ComplexMatrix& m, const ComplexVector& u0,
                                           int level) {
    require_square(m, "quadratic_form_identity");
    if (u0.size() != m.rows())
        throw DimensionError("quadratic_form_identity: witness dimension mismatch");
    if (level < 0) throw InputError("quadratic_form_identity: level must be >= 0");
    if (std::abs(u0.norm() - 1.0) > 1e-8)
        throw InputError("quadratic_form_identity: witness must be a unit vector");
    if (!is_semidissipative(m))
        throw InputError("quadratic_form_identity: matrix is not semi-dissipative");

    const Eigen::Index n = m.rows();
    const int p = 2 * level;
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    for (int j = 0; j < p + 1; ++j) power = m * power;

    const HermitianSplit split = hermitian_split(m);
    const ComplexMatrix sqrtNegH = psd_sqrt(-split.h);
    ComplexMatrix sPow = ComplexMatrix::Identity(n, n);
    ComplexMatrix mPow = ComplexMatrix::Identity(n, n);
    for (int j = 0; j < level; ++j) {
        sPow = split.s * sPow;
        mPow = m * mPow;
    }

    QuadraticFormCheck out;
    out.lhs = (u0.adjoint() * (power + power.adjoint()) * u0)(0).real();
    out.witnessNormSkew = (sqrtNegH * sPow * u0).norm();
    out.witnessNormFull = (sqrtNegH * mPow * u0).norm();
    const double sign = level % 2 == 0 ? 1.0 : -1.0;
    out.rhs = -2.0 * sign * out.witnessNormSkew * out.witnessNormSkew;
    out.match = std::abs(out.lhs - out.rhs) <= 1e-8 * (std::abs(out.lhs) + std::abs(out.rhs) + 1.0);
    return out;
}

std::optional<Counterexample> counterexample_search(
    const StabilityPolynomial& poly, const ComplexMatrix& m,
    const std::vector<double>& grid, const std::optional<ComplexMatrix>& weight) {
    require_square(m, "counterexample_search");
    require_grid(grid, "counterexample_search");

    std::optional<WeightTransform> w;
    if (weight) w = make_weight(*weight);

    double bestNorm = 0.0;
    double bestTau = 0.0;
    ComplexVector bestU;
    for (double tau : grid) {
        ComplexMatrix r = eval_poly_matrix(poly, m, tau);
        if (w) r = w->sqrt * r * w->invSqrt;
        Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeFullV);
        const double norm = svd.singularValues()(0);
        if (norm > bestNorm) {
            bestNorm = norm;
            bestTau = tau;
            bestU = svd.matrixV().col(0);
        }
    }
    if (bestNorm <= 1.0 + kViolationTol) return std::nullopt;

    Counterexample out;
    out.tau = bestTau;
    out.growth = bestNorm - 1.0;
    // Map the singular vector of the weighted operator back to an initial
    // condition of the original system.
    out.u = w ? ComplexVector(w->invSqrt * bestU) : bestU;
    out.u /= out.u.norm();
    return out;
}

}  // namespace rkcert
