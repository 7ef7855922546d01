#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "rkcert/rk.hpp"
#include "rkcert/types.hpp"

namespace rkcert {

// Deciding-rule tokens recorded in verdicts. Stable identifiers, documented
// in the README; "open:" prefixed tokens mark cases the theory leaves open.
namespace rules {
inline constexpr const char* kIndexBound = "index-bound";                    // stable for index <= (p-1)/2
inline constexpr const char* kCoefficientCondition = "coefficient-condition"; // strict c_{p+1} inequality
inline constexpr const char* kSingletonIndex = "singleton-index";            // condition + 2 m_HC + 1 > p
inline constexpr const char* kImagAxisIndicator = "imag-axis-indicator";     // gamma/delta sign
inline constexpr const char* kOrderMod4 = "order-mod-4";                     // s = p residue classification
inline constexpr const char* kTruncated4N = "truncated-exponential-4N";      // s = p, p = 0,1 mod 4: not stable
inline constexpr const char* kNecessaryCondition = "necessary-condition";    // combined non-stability test
inline constexpr const char* kConjunction = "component-conjunction";         // overall = AS-class AND imag-axis
inline constexpr const char* kWeakFormEquivalence = "weak-form-equivalence";
inline constexpr const char* kOpenDeltaZero = "open:delta-zero";
inline constexpr const char* kOpenEvenGap = "open:even-order-gap";
inline constexpr const char* kOpenNoCertificate = "open:no-certificate";
inline constexpr const char* kOpenComplexCoefficients = "open:complex-coefficients";
}  // namespace rules

/// A three-valued conclusion together with the rule that decided it and the
/// numeric quantities that triggered the rule.
struct Verdict {
    Conclusion conclusion = Conclusion::Undecided;
    std::string decidedBy;
    std::map<std::string, double> evidence;
    std::string note;
};

/// Full classification of a scheme: stability w.r.t. purely imaginary
/// scalars, w.r.t. the asymptotically stable semi-dissipative class (with the
/// guaranteed index bound m* = floor((p-1)/2)), overall, and in weak form.
struct StabilityReport {
    std::string scheme;
    int p = 0;
    int s = 0;
    std::vector<Complex> c;  // c_0..c_s
    int indexBound = 0;      // m* = floor((p-1)/2)
    Verdict imagAxis;
    Verdict classAS;
    Verdict overall;
    Verdict weakForm;
    std::optional<Verdict> perMatrix;
    bool orderAmbiguous = false;
};

/// Local stability on the imaginary axis from the gamma/delta indicators.
/// delta in the marginal band is an open case and yields Undecided.
Verdict classify_imag_axis(const KSIndicators& ind);

/// Verdict w.r.t. the asymptotically stable semi-dissipative class, plus the
/// index bound m* below which stability is guaranteed regardless.
std::pair<Verdict, int> classify_class_AS(const StabilityPolynomial& poly);

/// Assemble the full report. Rule precedence for the overall citation:
/// necessary-condition, imag-axis, coefficient-condition, order-mod-4,
/// conjunction. Precedence affects only the recorded rule, not conclusions.
StabilityReport classify_overall(const StabilityPolynomial& poly,
                                 const std::string& scheme = "");

/// Verdict w.r.t. the singleton {m}; m must be semi-dissipative and
/// asymptotically stable. Uses the definitional index computation.
Verdict classify_pair(const StabilityPolynomial& poly, const ComplexMatrix& m);

/// Strong stability in weak form: equivalent to the imaginary-axis verdict.
Verdict classify_weak_form(const KSIndicators& ind);

/// Exit-code convention shared with the CLI: Yes = 0, No = 3, Undecided = 4.
int conclusion_exit_code(Conclusion c);

}  // namespace rkcert
