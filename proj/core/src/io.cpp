#include "rkcert/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rkcert/linalg.hpp"

namespace rkcert {

namespace {

using json = nlohmann::ordered_json;

Complex parse_entry(const json& v, const char* what) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw InputError(std::string(what) + ": entries must be numbers or [re, im] pairs");
}

json entry_to_json(const Complex& v) {
    if (v.imag() == 0.0) return json(v.real());
    return json::array({v.real(), v.imag()});
}

json parse_text(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InputError(std::string(what) + ": malformed JSON");
    return j;
}

json verdict_json(const Verdict& v) {
    json j;
    j["conclusion"] = to_string(v.conclusion);
    j["decided_by"] = v.decidedBy;
    json ev = json::object();
    for (const auto& [key, value] : v.evidence) ev[key] = value;
    j["evidence"] = ev;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

std::string format_csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
    const json j = parse_text(text, "matrix");
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw InputError("matrix: expected an object with \"n\" and \"entries\"");
    const int n = j["n"].get<int>();
    if (n < 1) throw InputError("matrix: n must be positive");
    const json& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw InputError("matrix: entries must hold n rows");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("matrix: row " + std::to_string(i) + " must hold n entries");
        for (int k = 0; k < n; ++k)
            m(i, k) = parse_entry(row[static_cast<size_t>(k)], "matrix");
    }
    require_finite(m, "matrix");
    return m;
}

std::string matrix_to_json(const ComplexMatrix& m, int indent) {
    json j;
    j["n"] = m.rows();
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j.dump(indent);
}

ButcherTableau parse_tableau_json(const std::string& text) {
    const json j = parse_text(text, "tableau");
    if (!j.is_object() || !j.contains("s") || !j.contains("a") || !j.contains("b"))
        throw InputError("tableau: expected an object with \"s\", \"a\" and \"b\"");
    ButcherTableau t;
    t.s = j["s"].get<int>();
    if (t.s < 1) throw InputError("tableau: s must be positive");
    const json& a = j["a"];
    const json& b = j["b"];
    if (!a.is_array() || static_cast<int>(a.size()) != t.s)
        throw InputError("tableau: a must hold s rows");
    if (!b.is_array() || static_cast<int>(b.size()) != t.s)
        throw InputError("tableau: b must hold s weights");
    t.a = Eigen::MatrixXcd::Zero(t.s, t.s);
    for (int i = 0; i < t.s; ++i) {
        const json& row = a[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != t.s)
            throw InputError("tableau: row " + std::to_string(i) + " of a must hold s entries");
        for (int k = 0; k < t.s; ++k)
            t.a(i, k) = parse_entry(row[static_cast<size_t>(k)], "tableau");
    }
    t.b = Eigen::VectorXcd::Zero(t.s);
    for (int i = 0; i < t.s; ++i) t.b(i) = parse_entry(b[static_cast<size_t>(i)], "tableau");
    return t;
}

StabilityPolynomial parse_polynomial_json(const std::string& text) {
    const json j = parse_text(text, "polynomial");
    if (!j.is_object() || !j.contains("c") || !j["c"].is_array() || j["c"].empty())
        throw InputError("polynomial: expected an object with a nonempty \"c\" array");
    const json& c = j["c"];
    StabilityPolynomial poly;
    poly.s = static_cast<int>(c.size()) - 1;
    poly.c.resize(c.size());
    poly.d.resize(c.size());
    double factorial = 1.0;
    for (int k = 0; k <= poly.s; ++k) {
        if (k > 1) factorial *= k;
        poly.c[static_cast<size_t>(k)] = parse_entry(c[static_cast<size_t>(k)], "polynomial");
        poly.d[static_cast<size_t>(k)] = poly.c[static_cast<size_t>(k)] / factorial;
    }
    return poly;
}

std::string verdict_to_json(const Verdict& verdict, int indent) {
    return verdict_json(verdict).dump(indent);
}

std::string report_to_json(const StabilityReport& report, int indent) {
    json j;
    j["scheme"] = report.scheme;
    j["p"] = report.p;
    j["s"] = report.s;
    json c = json::array();
    for (const Complex& v : report.c) c.push_back(entry_to_json(v));
    j["c"] = c;
    j["index_bound"] = report.indexBound;
    if (report.orderAmbiguous) j["order_ambiguous"] = true;
    json verdicts;
    verdicts["imag_axis"] = verdict_json(report.imagAxis);
    verdicts["class_as"] = verdict_json(report.classAS);
    verdicts["weak_form"] = verdict_json(report.weakForm);
    verdicts["overall"] = verdict_json(report.overall);
    j["verdicts"] = verdicts;
    if (report.perMatrix) j["per_matrix"] = verdict_json(*report.perMatrix);
    return j.dump(indent);
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::string out = "tau,norm,excess\n";
    for (size_t i = 0; i < sweep.grid.size(); ++i) {
        out += format_csv_double(sweep.grid[i]);
        out += ',';
        out += format_csv_double(sweep.norms[i]);
        out += ',';
        out += format_csv_double(sweep.norms[i] - 1.0);
        out += '\n';
    }
    return out;
}

std::string sweep_summary_json(const SweepResult& sweep, int indent) {
    json j;
    j["points"] = sweep.grid.size();
    j["tau_min"] = sweep.grid.empty() ? 0.0 : sweep.grid.front();
    j["tau_max"] = sweep.grid.empty() ? 0.0 : sweep.grid.back();
    j["max_excess"] = sweep.maxExcess;
    if (sweep.firstViolation) {
        json v;
        v["tau"] = sweep.firstViolation->first;
        v["norm"] = sweep.firstViolation->second;
        j["first_violation"] = v;
    } else {
        j["first_violation"] = nullptr;
    }
    return j.dump(indent);
}

std::string exponent_fit_json(const ExponentFit& fit, int indent) {
    json j;
    j["a_hat"] = fit.aHat;
    j["c_hat"] = fit.cHat;
    j["residual"] = fit.residual;
    j["window"] = json::array({fit.windowLo, fit.windowHi});
    j["points_used"] = fit.pointsUsed;
    return j.dump(indent);
}

std::string gram_defect_json(const GramDefect& defect, int indent) {
    json j;
    j["points"] = defect.taus.size();
    if (std::isnan(defect.fittedOrder))
        j["fitted_order"] = nullptr;
    else
        j["fitted_order"] = defect.fittedOrder;
    if (std::isnan(defect.fittedCoefficient))
        j["fitted_coefficient"] = nullptr;
    else
        j["fitted_coefficient"] = defect.fittedCoefficient;
    j["predicted_leading_coefficient"] = defect.predictedLeadingCoefficient;
    j["degenerate"] = defect.degenerate;
    return j.dump(indent);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace rkcert
