#include "rkcert/classifier.hpp"

#include <cmath>

#include "rkcert/hypocoercivity.hpp"
#include "rkcert/linalg.hpp"

namespace rkcert {

namespace {

Verdict undecided_complex() {
    Verdict v;
    v.conclusion = Conclusion::Undecided;
    v.decidedBy = rules::kOpenComplexCoefficients;
    v.note = "classification requires real normalized coefficients";
    return v;
}

bool sEqualsP(const StabilityPolynomial& poly) { return poly.s == poly.p; }

}  // namespace

int conclusion_exit_code(Conclusion c) {
    switch (c) {
        case Conclusion::Yes: return 0;
        case Conclusion::No: return 3;
        default: return 4;
    }
}

Verdict classify_imag_axis(const KSIndicators& ind) {
    Verdict v;
    v.evidence["p"] = ind.p;
    if (ind.evenP) {
        const double delta = *ind.delta;
        v.evidence["delta"] = delta;
        v.decidedBy = rules::kImagAxisIndicator;
        switch (classify_sign(delta, kEigTol)) {
            case SignClass::Positive: v.conclusion = Conclusion::Yes; break;
            case SignClass::Negative: v.conclusion = Conclusion::No; break;
            default:
                // The theory leaves the delta = 0 case open.
                v.conclusion = Conclusion::Undecided;
                v.decidedBy = rules::kOpenDeltaZero;
                break;
        }
    } else {
        const double gamma = *ind.gamma;
        v.evidence["gamma"] = gamma;
        v.decidedBy = rules::kImagAxisIndicator;
        switch (classify_sign(gamma, kEigTol)) {
            case SignClass::Positive: v.conclusion = Conclusion::Yes; break;
            case SignClass::Negative: v.conclusion = Conclusion::No; break;
            default:
                // gamma = 0 would force c_{p+1} = 1, contradicting order p.
                v.conclusion = Conclusion::No;
                v.note = "gamma vanishes, inconsistent with the detected order";
                break;
        }
    }
    return v;
}

std::pair<Verdict, int> classify_class_AS(const StabilityPolynomial& poly) {
    if (poly.p < 0) throw InputError("classify_class_AS: linear order not detected");
    const int indexBound = (poly.p - 1) / 2;

    if (!poly.realCoefficients()) return {undecided_complex(), indexBound};

    const ConditionEvaluation cond = condition_c(poly);
    Verdict v;
    v.evidence["p"] = poly.p;
    v.evidence["s"] = poly.s;
    v.evidence["condition_value"] = cond.value;
    v.evidence["index_bound"] = indexBound;

    if (cond.holds == Conclusion::Yes) {
        v.conclusion = Conclusion::No;
        v.decidedBy = rules::kCoefficientCondition;
        return {v, indexBound};
    }
    if (sEqualsP(poly)) {
        // s = p forces the truncated exponential; the residue of p mod 4
        // decides the class verdict.
        switch (poly.p % 4) {
            case 3:
                v.conclusion = Conclusion::Yes;
                v.decidedBy = rules::kOrderMod4;
                return {v, indexBound};
            case 1:
            case 0:
                v.conclusion = Conclusion::No;
                v.decidedBy = rules::kOrderMod4;
                return {v, indexBound};
            default:
                v.conclusion = Conclusion::Undecided;
                v.decidedBy = rules::kOpenEvenGap;
                return {v, indexBound};
        }
    }
    if (cond.holds == Conclusion::Undecided) {
        v.conclusion = Conclusion::Undecided;
        v.decidedBy = poly.p % 2 == 0 ? rules::kOpenEvenGap : rules::kOpenNoCertificate;
        return {v, indexBound};
    }
    // Condition fails strictly, but no sufficient certificate covers s > p.
    v.conclusion = Conclusion::Undecided;
    v.decidedBy = poly.p % 2 == 0 ? rules::kOpenEvenGap : rules::kOpenNoCertificate;
    return {v, indexBound};
}

StabilityReport classify_overall(const StabilityPolynomial& poly, const std::string& scheme) {
    if (poly.p < 0) throw InputError("classify_overall: linear order not detected");

    StabilityReport report;
    report.scheme = scheme;
    report.p = poly.p;
    report.s = poly.s;
    report.c = poly.c;
    report.orderAmbiguous = poly.orderAmbiguous;

    if (!poly.realCoefficients()) {
        report.imagAxis = undecided_complex();
        report.classAS = undecided_complex();
        report.overall = undecided_complex();
        report.weakForm = undecided_complex();
        report.indexBound = (poly.p - 1) / 2;
        return report;
    }

    const KSIndicators ind = ks_indicators(poly);
    report.imagAxis = classify_imag_axis(ind);
    auto [classAS, indexBound] = classify_class_AS(poly);
    report.classAS = classAS;
    report.indexBound = indexBound;
    report.weakForm = classify_weak_form(ind);

    const Conclusion notStable = condition_thm25(poly);

    Verdict overall;
    overall.evidence["p"] = poly.p;
    overall.evidence["s"] = poly.s;
    if (notStable == Conclusion::Yes) {
        overall.conclusion = Conclusion::No;
        // s = p with p = 0,1 mod 4 is the sharper named result.
        overall.decidedBy = (sEqualsP(poly) && (poly.p % 4 == 0 || poly.p % 4 == 1))
                                ? rules::kTruncated4N
                                : rules::kNecessaryCondition;
        overall.evidence["condition_value"] = condition_c(poly).value;
        if (ind.delta) overall.evidence["delta"] = *ind.delta;
        if (ind.gamma) overall.evidence["gamma"] = *ind.gamma;
    } else if (report.imagAxis.conclusion == Conclusion::No) {
        overall.conclusion = Conclusion::No;
        overall.decidedBy = rules::kImagAxisIndicator;
        overall.evidence = report.imagAxis.evidence;
    } else if (report.classAS.conclusion == Conclusion::No) {
        overall.conclusion = Conclusion::No;
        overall.decidedBy = report.classAS.decidedBy;
        overall.evidence = report.classAS.evidence;
    } else if (report.imagAxis.conclusion == Conclusion::Yes &&
               report.classAS.conclusion == Conclusion::Yes) {
        overall.conclusion = Conclusion::Yes;
        overall.decidedBy = sEqualsP(poly) ? rules::kOrderMod4 : rules::kConjunction;
    } else {
        overall.conclusion = Conclusion::Undecided;
        overall.decidedBy = report.imagAxis.conclusion == Conclusion::Undecided
                                ? report.imagAxis.decidedBy
                                : report.classAS.decidedBy;
    }
    report.overall = overall;
    return report;
}

Verdict classify_pair(const StabilityPolynomial& poly, const ComplexMatrix& m) {
    if (poly.p < 0) throw InputError("classify_pair: linear order not detected");
    if (!is_semidissipative(m))
        throw InputError("classify_pair: matrix is not semi-dissipative");
    const StabilityClass sc = classify_stability(m);
    if (sc.tag != StabilityTag::AsymptoticallyStable)
        throw InputError("classify_pair: matrix is not asymptotically stable "
                         "(spectral abscissa = " + std::to_string(sc.spectralAbscissa) + ")");

    const HCCertificate cert = hc_index_definitional(m);
    if (!cert.mHC)
        throw InputError("classify_pair: no finite hypocoercivity index found");
    const int mhc = *cert.mHC;

    Verdict v;
    v.evidence["p"] = poly.p;
    v.evidence["m_hc"] = mhc;
    if (2 * mhc + 1 <= poly.p) {
        v.conclusion = Conclusion::Yes;
        v.decidedBy = rules::kIndexBound;
        return v;
    }
    if (!poly.realCoefficients()) return undecided_complex();
    const ConditionEvaluation cond = condition_c(poly);
    v.evidence["condition_value"] = cond.value;
    if (cond.holds == Conclusion::Yes) {
        v.conclusion = Conclusion::No;
        v.decidedBy = rules::kSingletonIndex;
        return v;
    }
    v.conclusion = Conclusion::Undecided;
    v.decidedBy = cond.holds == Conclusion::Undecided
                      ? rules::kCoefficientCondition
                      : (poly.p % 2 == 0 ? rules::kOpenEvenGap : rules::kOpenNoCertificate);
    return v;
}

Verdict classify_weak_form(const KSIndicators& ind) {
    Verdict v = classify_imag_axis(ind);
    if (v.conclusion != Conclusion::Undecided) v.decidedBy = rules::kWeakFormEquivalence;
    return v;
}

}  // namespace rkcert
