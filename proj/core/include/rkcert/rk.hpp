#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rkcert/types.hpp"

namespace rkcert {

// |c_j - 1| threshold for linear order detection. Tableau coefficients are
// typically exact rationals, so deviations beyond rounding are structural.
inline constexpr double kOrderTol = 1e-10;

// Values of |c_{p+1} - 1| between kOrderTol and this bound make the detected
// order ambiguous; the polynomial is flagged instead of silently classified.
inline constexpr double kOrderAmbiguityBand = 1e-6;

/// Explicit Runge-Kutta tableau: strictly lower triangular a (entries on and
/// above the diagonal exactly zero), stage weights b.
struct ButcherTableau {
    int s = 0;
    Eigen::MatrixXcd a;
    Eigen::VectorXcd b;
};

/// Stability function R(z) = sum_j d_j z^j = sum_j c_j z^j / j!.
struct StabilityPolynomial {
    int s = 0;                 // degree bound; c_j = 0 for j > s
    std::vector<Complex> d;    // raw coefficients d_0..d_s
    std::vector<Complex> c;    // normalized coefficients c_j = j! * d_j
    int p = -1;                // detected linear order, -1 until detected
    bool orderAmbiguous = false;

    Complex cAt(int j) const;  // c_j, zero beyond s
    Complex dAt(int j) const;
    /// All coefficients real (exactly, up to tol)?
    bool realCoefficients(double tol = 0.0) const;
};

/// Local-stability indicators on the imaginary axis:
/// odd p:  gamma_{p+1} = (-1)^{(p+1)/2} (1 - c_{p+1})
/// even p: delta_{p+1} = (-1)^{p/2} (c_{p+2} - (p+2) c_{p+1} + (p+1))
struct KSIndicators {
    int p = 0;
    bool evenP = false;
    std::optional<double> gamma;  // present iff p odd
    std::optional<double> delta;  // present iff p even
    double cP1 = 0.0;
    double cP2 = 0.0;
};

/// Evaluated left-hand side of the strict order-coefficient inequality,
/// with the three-valued outcome of "lhs < 0".
struct ConditionEvaluation {
    double value = 0.0;
    Conclusion holds = Conclusion::Undecided;
    bool evenP = false;
};

/// Exact binomial coefficient in double precision (n small).
double binomial(int n, int k);

/// Expand the stability polynomial of an explicit tableau:
/// d_0 = 1, d_j = b^T A^{j-1} 1 for j >= 1 (A nilpotent, so exact).
StabilityPolynomial stability_polynomial(const ButcherTableau& t);

/// Largest p with |c_j - 1| <= tol for all j <= p; stored into poly.p.
int linear_order(StabilityPolynomial& poly, double tol = kOrderTol);

/// gamma/delta indicators; requires detected order and real coefficients.
KSIndicators ks_indicators(const StabilityPolynomial& poly);

/// Strict inequality on c_{p+1}:
/// odd p:  (-1)^{(p+1)/2} (1 - c_{p+1}) < 0
/// even p: 1 + (-1)^{p/2} (c_{p+1} - 1) * C(p, p/2) < 0
ConditionEvaluation condition_c(const StabilityPolynomial& poly);

/// Combined non-stability test: the odd-p inequality, or (even p) either the
/// delta-expression < 0 or the even-p coefficient inequality.
Conclusion condition_thm25(const StabilityPolynomial& poly);

/// Horner evaluation at a scalar and at tau*m.
Complex eval_poly(const StabilityPolynomial& poly, Complex z);
ComplexMatrix eval_poly_matrix(const StabilityPolynomial& poly, const ComplexMatrix& m,
                               double tau);

/// Truncated exponential sum_{j<=degree} z^j/j! with order detected.
StabilityPolynomial truncated_exponential(int degree);

/// Built-in scheme catalog: euler, heun2, heun3, kutta3, rk4 (tableaux) and
/// texp1..texp8 (stability polynomials directly).
struct SchemeInfo {
    std::string name;
    std::string description;
    std::optional<ButcherTableau> tableau;
    StabilityPolynomial poly;  // order detected
};

const std::vector<std::string>& scheme_catalog_names();
SchemeInfo scheme_from_catalog(const std::string& name);

}  // namespace rkcert
