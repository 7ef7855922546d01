#include "rkcert/rk.hpp"

#include <algorithm>
#include <cmath>

#include "rkcert/linalg.hpp"

namespace rkcert {

namespace {

constexpr double kRealCoeffTol = 1e-13;

double factorial(int j) {
    double f = 1.0;
    for (int k = 2; k <= j; ++k) f *= k;
    return f;
}

StabilityPolynomial from_raw(std::vector<Complex> d) {
    StabilityPolynomial poly;
    poly.s = static_cast<int>(d.size()) - 1;
    poly.d = std::move(d);
    poly.c.resize(poly.d.size());
    for (int j = 0; j <= poly.s; ++j) poly.c[j] = factorial(j) * poly.d[j];
    return poly;
}

ButcherTableau make_tableau(int s, std::initializer_list<double> aRowMajor,
                            std::initializer_list<double> b) {
    ButcherTableau t;
    t.s = s;
    t.a = Eigen::MatrixXcd::Zero(s, s);
    auto it = aRowMajor.begin();
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) t.a(i, j) = *it++;
    t.b = Eigen::VectorXcd::Zero(s);
    auto bt = b.begin();
    for (int i = 0; i < s; ++i) t.b(i) = *bt++;
    return t;
}

}  // namespace

Complex StabilityPolynomial::cAt(int j) const {
    if (j < 0 || j > s) return Complex(0.0, 0.0);
    return c[static_cast<size_t>(j)];
}

Complex StabilityPolynomial::dAt(int j) const {
    if (j < 0 || j > s) return Complex(0.0, 0.0);
    return d[static_cast<size_t>(j)];
}

bool StabilityPolynomial::realCoefficients(double tol) const {
    double scale = 0.0;
    for (const Complex& v : c) scale = std::max(scale, std::abs(v));
    const double band = std::max(tol, kRealCoeffTol * std::max(1.0, scale));
    return std::all_of(c.begin(), c.end(),
                       [band](const Complex& v) { return std::abs(v.imag()) <= band; });
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return std::round(acc);
}

StabilityPolynomial stability_polynomial(const ButcherTableau& t) {
    if (t.s <= 0 || t.a.rows() != t.s || t.a.cols() != t.s || t.b.size() != t.s)
        throw DimensionError("stability_polynomial: tableau dimensions are inconsistent");
    for (int i = 0; i < t.s; ++i)
        for (int j = i; j < t.s; ++j)
            if (t.a(i, j) != Complex(0.0, 0.0))
                throw NotExplicitError(
                    "stability_polynomial: a must be strictly lower triangular "
                    "(nonzero entry at " + std::to_string(i) + "," + std::to_string(j) + ")");

    // d_j = b^T A^{j-1} 1; A nilpotent, so the expansion terminates exactly.
    std::vector<Complex> d(static_cast<size_t>(t.s) + 1);
    d[0] = 1.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(t.s);
    for (int j = 1; j <= t.s; ++j) {
        d[static_cast<size_t>(j)] = (t.b.transpose() * v)(0);
        v = t.a * v;
    }
    return from_raw(std::move(d));
}

int linear_order(StabilityPolynomial& poly, double tol) {
    if (std::abs(poly.dAt(0) - Complex(1.0, 0.0)) > tol)
        throw InconsistentSchemeError("linear_order: R(0) != 1");
    int p = 0;
    while (p < poly.s && std::abs(poly.cAt(p + 1) - Complex(1.0, 0.0)) <= tol) ++p;
    poly.p = p;
    const double gap = std::abs(poly.cAt(p + 1) - Complex(1.0, 0.0));
    poly.orderAmbiguous = gap > tol && gap < kOrderAmbiguityBand;
    return p;
}

KSIndicators ks_indicators(const StabilityPolynomial& poly) {
    if (poly.p < 0) throw InputError("ks_indicators: linear order not detected");
    if (!poly.realCoefficients())
        throw InputError("ks_indicators: coefficients must be real");

    KSIndicators ind;
    ind.p = poly.p;
    ind.evenP = poly.p % 2 == 0;
    ind.cP1 = poly.cAt(poly.p + 1).real();
    ind.cP2 = poly.cAt(poly.p + 2).real();
    if (ind.evenP) {
        const double sign = (poly.p / 2) % 2 == 0 ? 1.0 : -1.0;
        ind.delta = sign * (ind.cP2 - (poly.p + 2) * ind.cP1 + (poly.p + 1));
    } else {
        const double sign = ((poly.p + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        ind.gamma = sign * (1.0 - ind.cP1);
    }
    return ind;
}

ConditionEvaluation condition_c(const StabilityPolynomial& poly) {
    if (poly.p < 0) throw InputError("condition_c: linear order not detected");
    if (!poly.realCoefficients())
        throw InputError("condition_c: coefficients must be real");

    ConditionEvaluation out;
    out.evenP = poly.p % 2 == 0;
    const double cp1 = poly.cAt(poly.p + 1).real();
    if (out.evenP) {
        const double sign = (poly.p / 2) % 2 == 0 ? 1.0 : -1.0;
        out.value = 1.0 + sign * (cp1 - 1.0) * binomial(poly.p, poly.p / 2);
    } else {
        const double sign = ((poly.p + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        out.value = sign * (1.0 - cp1);
    }
    switch (classify_sign(out.value, kEigTol)) {
        case SignClass::Negative: out.holds = Conclusion::Yes; break;
        case SignClass::Positive: out.holds = Conclusion::No; break;
        default: out.holds = Conclusion::Undecided; break;
    }
    return out;
}

Conclusion condition_thm25(const StabilityPolynomial& poly) {
    const ConditionEvaluation cond = condition_c(poly);
    if (poly.p % 2 != 0) return cond.holds;

    // Even order: the delta-expression < 0 is an alternative trigger.
    const KSIndicators ind = ks_indicators(poly);
    const SignClass deltaSign = classify_sign(*ind.delta, kEigTol);
    if (deltaSign == SignClass::Negative || cond.holds == Conclusion::Yes)
        return Conclusion::Yes;
    if (deltaSign == SignClass::Marginal || cond.holds == Conclusion::Undecided)
        return Conclusion::Undecided;
    return Conclusion::No;
}

Complex eval_poly(const StabilityPolynomial& poly, Complex z) {
    Complex acc = poly.dAt(poly.s);
    for (int j = poly.s - 1; j >= 0; --j) acc = acc * z + poly.dAt(j);
    return acc;
}

ComplexMatrix eval_poly_matrix(const StabilityPolynomial& poly, const ComplexMatrix& m,
                               double tau) {
    require_square(m, "eval_poly_matrix");
    require_finite(m, "eval_poly_matrix");
    const Eigen::Index n = m.rows();
    const ComplexMatrix z = tau * m;
    ComplexMatrix acc = poly.dAt(poly.s) * ComplexMatrix::Identity(n, n);
    for (int j = poly.s - 1; j >= 0; --j) {
        acc = z * acc;
        acc.diagonal().array() += poly.dAt(j);
    }
    return acc;
}

StabilityPolynomial truncated_exponential(int degree) {
    if (degree < 0) throw InputError("truncated_exponential: degree must be >= 0");
    std::vector<Complex> d(static_cast<size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j) d[static_cast<size_t>(j)] = 1.0 / factorial(j);
    StabilityPolynomial poly = from_raw(std::move(d));
    linear_order(poly);
    return poly;
}

const std::vector<std::string>& scheme_catalog_names() {
    static const std::vector<std::string> names = {
        "euler", "heun2", "heun3", "kutta3", "rk4",
        "texp1", "texp2", "texp3", "texp4", "texp5", "texp6", "texp7", "texp8",
    };
    return names;
}

SchemeInfo scheme_from_catalog(const std::string& name) {
    SchemeInfo info;
    info.name = name;
    if (name == "euler") {
        info.description = "forward Euler (1 stage, order 1)";
        info.tableau = make_tableau(1, {0}, {1});
    } else if (name == "heun2") {
        info.description = "Heun's 2-stage second-order scheme";
        info.tableau = make_tableau(2, {0, 0, 1, 0}, {0.5, 0.5});
    } else if (name == "heun3") {
        info.description = "Heun's 3-stage third-order scheme";
        info.tableau = make_tableau(3,
                                    {0, 0, 0,
                                     1.0 / 3.0, 0, 0,
                                     0, 2.0 / 3.0, 0},
                                    {0.25, 0, 0.75});
    } else if (name == "kutta3") {
        info.description = "Kutta's 3-stage third-order scheme";
        info.tableau = make_tableau(3,
                                    {0, 0, 0,
                                     0.5, 0, 0,
                                     -1.0, 2.0, 0},
                                    {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0});
    } else if (name == "rk4") {
        info.description = "classical 4-stage fourth-order scheme";
        info.tableau = make_tableau(4,
                                    {0, 0, 0, 0,
                                     0.5, 0, 0, 0,
                                     0, 0.5, 0, 0,
                                     0, 0, 1.0, 0},
                                    {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0});
    } else if (name.rfind("texp", 0) == 0 && name.size() > 4) {
        const int degree = std::stoi(name.substr(4));
        if (degree < 1 || degree > 64)
            throw InputError("scheme_from_catalog: unsupported truncated-exponential degree");
        info.description = "truncated exponential of degree " + std::to_string(degree) +
                           " (s = p = " + std::to_string(degree) + ")";
        info.poly = truncated_exponential(degree);
        return info;
    } else {
        throw InputError("scheme_from_catalog: unknown scheme '" + name + "'");
    }
    info.poly = stability_polynomial(*info.tableau);
    linear_order(info.poly);
    return info;
}

}  // namespace rkcert
