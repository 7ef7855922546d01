#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rkcert/classifier.hpp"
#include "rkcert/rk.hpp"
#include "rkcert/types.hpp"
#include "rkcert/verifier.hpp"

namespace rkcert {

// JSON / CSV surfaces. Matrix format:
//   {"n": 3, "entries": [[[re,im], ...], ...]}   (row-major)
// real matrices may use bare doubles for entries; the reader promotes them.
// Tableau format: {"s": 4, "a": [[...]], "b": [...]} with doubles or [re,im].
// Polynomial format: {"c": [c_0, c_1, ...]} (normalized coefficients).
//
// Emitted JSON has stable field order and shortest-round-trip floats, so a
// parse/re-render cycle is byte-identical.

ComplexMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& m, int indent = 2);

ButcherTableau parse_tableau_json(const std::string& text);
StabilityPolynomial parse_polynomial_json(const std::string& text);

std::string report_to_json(const StabilityReport& report, int indent = 2);
std::string verdict_to_json(const Verdict& verdict, int indent = 2);

/// CSV with header "tau,norm,excess".
std::string sweep_to_csv(const SweepResult& sweep);
std::string sweep_summary_json(const SweepResult& sweep, int indent = 2);
std::string exponent_fit_json(const ExponentFit& fit, int indent = 2);
std::string gram_defect_json(const GramDefect& defect, int indent = 2);

std::string read_file(const std::string& path);

}  // namespace rkcert
