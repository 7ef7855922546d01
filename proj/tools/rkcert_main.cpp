// rkcert: strong-stability analysis of explicit Runge-Kutta schemes for
// linear autonomous systems. Subcommands cover scheme classification,
// hypocoercivity-index computation, staircase/block-diagonal reductions,
// spectral-norm sweeps, short-time exponent fits and Gram-defect checks.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkcert/catalog.hpp"
#include "rkcert/classifier.hpp"
#include "rkcert/hypocoercivity.hpp"
#include "rkcert/io.hpp"
#include "rkcert/linalg.hpp"
#include "rkcert/rk.hpp"
#include "rkcert/verifier.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace rkcert;

constexpr int kExitError = 2;

struct SchemeOptions {
    std::string catalogName;
    std::string tableauPath;
    std::string polyPath;
};

struct GridOptions {
    double min = 0.0;
    double max = 0.0;
    int points = 200;
};

void add_scheme_options(CLI::App* cmd, SchemeOptions& opts) {
    auto* cat = cmd->add_option("--catalog", opts.catalogName, "scheme from the built-in catalog");
    auto* tab = cmd->add_option("--tableau", opts.tableauPath, "Butcher tableau JSON file");
    auto* pol = cmd->add_option("--poly", opts.polyPath, "stability polynomial JSON file");
    cat->excludes(tab)->excludes(pol);
    tab->excludes(pol);
}

SchemeInfo load_scheme(const SchemeOptions& opts) {
    if (!opts.catalogName.empty()) return scheme_from_catalog(opts.catalogName);
    SchemeInfo info;
    if (!opts.tableauPath.empty()) {
        info.name = std::filesystem::path(opts.tableauPath).stem().string();
        info.tableau = parse_tableau_json(read_file(opts.tableauPath));
        info.poly = stability_polynomial(*info.tableau);
    } else if (!opts.polyPath.empty()) {
        info.name = std::filesystem::path(opts.polyPath).stem().string();
        info.poly = parse_polynomial_json(read_file(opts.polyPath));
    } else {
        throw InputError("no scheme given: use --catalog, --tableau or --poly");
    }
    linear_order(info.poly);
    return info;
}

ComplexMatrix load_matrix(const std::string& nameOrPath) {
    if (nameOrPath.empty()) throw InputError("no matrix given: use --matrix");
    const auto& names = matrix_catalog_names();
    if (std::find(names.begin(), names.end(), nameOrPath) != names.end())
        return matrix_from_catalog(nameOrPath);
    return parse_matrix_json(read_file(nameOrPath));
}

std::string conclusion_text(Conclusion c) {
    switch (c) {
        case Conclusion::Yes: return "Yes";
        case Conclusion::No: return "No";
        default: return "Undecided";
    }
}

void print_verdict_line(const std::string& label, const Verdict& v) {
    std::printf("  %-28s %-10s [%s]", (label + ":").c_str(),
                conclusion_text(v.conclusion).c_str(), v.decidedBy.c_str());
    bool first = true;
    for (const auto& [key, value] : v.evidence) {
        std::printf("%s %s = %.6g", first ? " " : ",", key.c_str(), value);
        first = false;
    }
    if (!v.note.empty()) std::printf("  (%s)", v.note.c_str());
    std::printf("\n");
}

int cmd_analyze_scheme(const SchemeOptions& schemeOpts, const std::string& format) {
    const SchemeInfo scheme = load_scheme(schemeOpts);
    const StabilityReport report = classify_overall(scheme.poly, scheme.name);
    if (format == "json") {
        std::printf("%s\n", report_to_json(report).c_str());
    } else {
        std::printf("scheme: %s  (s = %d, p = %d)\n", report.scheme.c_str(), report.s, report.p);
        std::printf("  normalized coefficients c_0..c_%d:", report.s);
        for (const Complex& c : report.c) {
            if (c.imag() == 0.0)
                std::printf(" %.12g", c.real());
            else
                std::printf(" %.12g%+.12gi", c.real(), c.imag());
        }
        std::printf("\n");
        if (report.orderAmbiguous)
            std::printf("  warning: |c_{p+1} - 1| falls in the ambiguous band; the detected "
                        "order may be unreliable\n");
        std::printf("  guaranteed stable for index <= %d\n", report.indexBound);
        print_verdict_line("imaginary axis", report.imagAxis);
        print_verdict_line("AS semi-dissipative class", report.classAS);
        print_verdict_line("weak form", report.weakForm);
        print_verdict_line("overall", report.overall);
    }
    return conclusion_exit_code(report.overall.conclusion);
}

int cmd_hc_index(const std::string& matrixArg, double tolEig, double tolRank,
                 const std::string& format) {
    const ComplexMatrix m = load_matrix(matrixArg);
    const HCCertificate cert = hc_index_definitional(m, tolEig);

    std::optional<int> stairIndex;
    std::optional<StaircaseForm> sf;
    const HermitianSplit split = hermitian_split(m);
    if (spectral_norm(split.h) > 0.0) {
        sf = staircase(split.s, split.h, tolRank);
        if (sf->blockSizes.back() == 0) stairIndex = sf->r - 2;
    }

    if (format == "json") {
        json j;
        j["n"] = m.rows();
        if (cert.mHC)
            j["m_hc_definitional"] = *cert.mHC;
        else
            j["m_hc_definitional"] = nullptr;
        if (stairIndex)
            j["m_hc_staircase"] = *stairIndex;
        else
            j["m_hc_staircase"] = nullptr;
        j["t_chain_max_eigs"] = cert.tChainMaxEigs;
        if (sf) {
            j["r"] = sf->r;
            j["block_sizes"] = sf->blockSizes;
            json decisions = json::array();
            for (const RankDecision& d : sf->rankDecisions) {
                json dj;
                dj["step"] = d.step;
                dj["rank"] = d.rank;
                dj["threshold"] = d.threshold;
                dj["singular_values"] = d.singularValues;
                decisions.push_back(dj);
            }
            j["rank_decisions"] = decisions;
        }
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("matrix: n = %ld\n", static_cast<long>(m.rows()));
        if (cert.mHC)
            std::printf("  hc-index (definitional): %d\n", *cert.mHC);
        else
            std::printf("  hc-index (definitional): no finite index\n");
        if (stairIndex)
            std::printf("  hc-index (staircase):    %d\n", *stairIndex);
        else if (sf)
            std::printf("  hc-index (staircase):    not asymptotically stable "
                        "(trailing block size %d)\n", sf->blockSizes.back());
        else
            std::printf("  hc-index (staircase):    not applicable (Hermitian part is zero)\n");
        std::printf("  T-chain max eigenvalues: ");
        for (double v : cert.tChainMaxEigs) std::printf(" %.6g", v);
        std::printf("\n");
        if (sf) {
            std::printf("  staircase blocks: r = %d, sizes (", sf->r);
            for (size_t i = 0; i < sf->blockSizes.size(); ++i)
                std::printf("%s%d", i ? ", " : "", sf->blockSizes[i]);
            std::printf(")\n  rank decisions (singular values | threshold):\n");
            for (const RankDecision& d : sf->rankDecisions) {
                std::printf("    step %d: rank %d |", d.step, d.rank);
                for (double s : d.singularValues) std::printf(" %.6g", s);
                std::printf(" | %.3g\n", d.threshold);
            }
        }
    }
    return 0;
}

int cmd_staircase(const std::string& matrixArg, double tolRank, const std::string& format) {
    const ComplexMatrix m = load_matrix(matrixArg);
    const HermitianSplit split = hermitian_split(m);
    const StaircaseForm sf = staircase(split.s, split.h, tolRank);
    if (format == "json") {
        json j;
        j["r"] = sf.r;
        j["block_sizes"] = sf.blockSizes;
        j["v"] = json::parse(matrix_to_json(sf.v));
        j["j_transformed"] = json::parse(matrix_to_json(sf.jT));
        j["r_transformed"] = json::parse(matrix_to_json(sf.rT));
        json decisions = json::array();
        for (const RankDecision& d : sf.rankDecisions) {
            json dj;
            dj["step"] = d.step;
            dj["rank"] = d.rank;
            dj["threshold"] = d.threshold;
            dj["singular_values"] = d.singularValues;
            decisions.push_back(dj);
        }
        j["rank_decisions"] = decisions;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("staircase: r = %d, sizes (", sf.r);
        for (size_t i = 0; i < sf.blockSizes.size(); ++i)
            std::printf("%s%d", i ? ", " : "", sf.blockSizes[i]);
        std::printf(")\n");
        const double recon = spectral_norm(sf.v.adjoint() * (sf.jT + sf.rT) * sf.v - m);
        std::printf("  reconstruction residual: %.3g\n", recon);
        for (const RankDecision& d : sf.rankDecisions) {
            std::printf("  step %d: rank %d |", d.step, d.rank);
            for (double s : d.singularValues) std::printf(" %.6g", s);
            std::printf(" | threshold %.3g\n", d.threshold);
        }
    }
    return 0;
}

int cmd_block_diag(const std::string& matrixArg, double tolRank, const std::string& format) {
    const ComplexMatrix m = load_matrix(matrixArg);
    const BlockDiagonalForm bd = block_diagonalize(m, tolRank);
    const int n1 = bd.l1 ? static_cast<int>(bd.l1->rows()) : 0;
    const int n2 = bd.l2 ? static_cast<int>(bd.l2->rows()) : 0;
    if (format == "json") {
        json j;
        j["n1"] = n1;
        j["n2"] = n2;
        j["v"] = json::parse(matrix_to_json(bd.v));
        if (bd.l1) j["l1"] = json::parse(matrix_to_json(*bd.l1));
        if (bd.l2) j["l2"] = json::parse(matrix_to_json(*bd.l2));
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("block-diagonal form: n1 = %d (asymptotically stable part), "
                    "n2 = %d (skew-Hermitian part)\n", n1, n2);
    }
    return 0;
}

int cmd_classify_pair(const SchemeOptions& schemeOpts, const std::string& matrixArg,
                      const std::string& format) {
    const SchemeInfo scheme = load_scheme(schemeOpts);
    const ComplexMatrix m = load_matrix(matrixArg);
    const Verdict v = classify_pair(scheme.poly, m);
    if (format == "json") {
        std::printf("%s\n", verdict_to_json(v).c_str());
    } else {
        std::printf("scheme %s on the given matrix:\n", scheme.name.c_str());
        print_verdict_line("strongly stable w.r.t. {L}", v);
    }
    return conclusion_exit_code(v.conclusion);
}

std::vector<double> make_grid(const GridOptions& gridOpts, const ComplexMatrix& m) {
    if (gridOpts.min > 0.0 && gridOpts.max > gridOpts.min)
        return log_grid(gridOpts.min, gridOpts.max, gridOpts.points);
    return default_grid(m, gridOpts.points);
}

int cmd_verify(const SchemeOptions& schemeOpts, const std::string& matrixArg,
               const std::string& weightArg, const GridOptions& gridOpts,
               const std::string& format) {
    const SchemeInfo scheme = load_scheme(schemeOpts);
    const ComplexMatrix m = load_matrix(matrixArg);

    std::optional<ComplexMatrix> weight;
    if (!weightArg.empty()) {
        if (weightArg == "auto")
            weight = solve_lyapunov(m, ComplexMatrix::Identity(m.rows(), m.cols()));
        else
            weight = load_matrix(weightArg);
    }

    const std::vector<double> grid = make_grid(gridOpts, m);
    const SweepResult sweep = norm_sweep(scheme.poly, m, grid, weight);

    if (format == "csv") {
        std::printf("%s", sweep_to_csv(sweep).c_str());
    } else if (format == "json") {
        std::printf("%s\n", sweep_summary_json(sweep).c_str());
    } else {
        std::printf("sweep: %zu points in [%.6g, %.6g]%s\n", sweep.grid.size(),
                    sweep.grid.front(), sweep.grid.back(),
                    weight ? " (weighted norm)" : "");
        std::printf("  max excess over 1: %.6g\n", sweep.maxExcess);
        if (sweep.firstViolation)
            std::printf("  VIOLATION: ||R(tau L)|| = %.12g at tau = %.6g\n",
                        sweep.firstViolation->second, sweep.firstViolation->first);
        else
            std::printf("  no violation on this grid\n");
    }
    return sweep.firstViolation ? 3 : 0;
}

int cmd_fit_exponent(const std::string& matrixArg, const std::string& format) {
    const ComplexMatrix m = load_matrix(matrixArg);
    const ExponentFit fit = fit_exponential_norm_decay(m);
    if (format == "json") {
        std::printf("%s\n", exponent_fit_json(fit).c_str());
    } else {
        std::printf("short-time decay of ||exp(tau L)||: 1 - c tau^a\n");
        std::printf("  a (fitted exponent) = %.4f\n", fit.aHat);
        std::printf("  c (fitted prefactor) = %.6g\n", fit.cHat);
        std::printf("  window tau in [%.3g, %.3g], %d points, log-residual %.3g\n",
                    fit.windowLo, fit.windowHi, fit.pointsUsed, fit.residual);
        std::printf("  implied hc-index (a - 1)/2 = %.3f\n", (fit.aHat - 1.0) / 2.0);
    }
    return 0;
}

int cmd_gram_defect(const SchemeOptions& schemeOpts, const std::string& matrixArg,
                    const GridOptions& gridOpts, const std::string& format) {
    const SchemeInfo scheme = load_scheme(schemeOpts);
    const ComplexMatrix m = load_matrix(matrixArg);

    GridOptions opts = gridOpts;
    if (!(opts.min > 0.0)) {
        const double nrm = spectral_norm(m);
        const double cap = nrm > 0.0 ? 0.1 / nrm : 0.1;
        opts.min = 1e-6;
        opts.max = cap;
        if (opts.min >= opts.max) opts.min = opts.max / 1e4;
        opts.points = std::min(opts.points, 80);
    }
    const std::vector<double> grid = log_grid(opts.min, opts.max, opts.points);
    const GramDefect defect = gram_defect(scheme.poly, m, grid);
    if (format == "json") {
        std::printf("%s\n", gram_defect_json(defect).c_str());
    } else {
        std::printf("Gram defect ||R(tau L)* R(tau L) - exp(tau L)* exp(tau L)||:\n");
        std::printf("  fitted order: %.4f (p + 1 = %d)\n", defect.fittedOrder, scheme.poly.p + 1);
        std::printf("  fitted leading coefficient: %.6g\n", defect.fittedCoefficient);
        std::printf("  predicted leading coefficient: %.6g\n", defect.predictedLeadingCoefficient);
        if (defect.degenerate)
            std::printf("  leading matrix vanishes: true decay order is at least p + 2\n");
    }
    return 0;
}

int cmd_catalog_list() {
    std::printf("schemes:\n");
    for (const std::string& name : scheme_catalog_names()) {
        const SchemeInfo info = scheme_from_catalog(name);
        std::printf("  %-8s s = %d, p = %d  %s\n", name.c_str(), info.poly.s, info.poly.p,
                    info.description.c_str());
    }
    std::printf("matrices:\n");
    for (const std::string& name : matrix_catalog_names()) {
        const ComplexMatrix m = matrix_from_catalog(name);
        std::printf("  %-15s n = %ld\n", name.c_str(), static_cast<long>(m.rows()));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strong-stability certification for explicit Runge-Kutta schemes"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text, json or csv (sweeps)")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    double tolEig = kEigTol;
    double tolRank = kRankTolFactor;
    app.add_option("--tol-eig", tolEig, "eigenvalue sign tolerance (relative)");
    app.add_option("--tol-rank", tolRank, "staircase rank tolerance factor");

    GridOptions gridOpts;
    SchemeOptions schemeOpts;
    std::string matrixArg, weightArg;

    auto addGrid = [&gridOpts](CLI::App* cmd) {
        cmd->add_option("--grid-min", gridOpts.min, "smallest tau");
        cmd->add_option("--grid-max", gridOpts.max, "largest tau");
        cmd->add_option("--grid-points", gridOpts.points, "number of grid points");
    };
    auto addMatrix = [&matrixArg](CLI::App* cmd, bool catalogAlias) {
        cmd->add_option("--matrix", matrixArg, "matrix: catalog name or JSON file");
        if (catalogAlias)
            cmd->add_option("--catalog", matrixArg, "matrix from the built-in catalog");
    };

    auto* analyze = app.add_subcommand("analyze-scheme", "classify a scheme's strong stability");
    add_scheme_options(analyze, schemeOpts);

    auto* hcIndex = app.add_subcommand("hc-index", "hypocoercivity index of a matrix");
    addMatrix(hcIndex, true);

    auto* stair = app.add_subcommand("staircase", "staircase form of (L_S, L_H)");
    addMatrix(stair, true);

    auto* blockDiag = app.add_subcommand("block-diag", "block-diagonal reduction");
    addMatrix(blockDiag, true);

    auto* pair = app.add_subcommand("classify-pair", "stability w.r.t. a single matrix");
    add_scheme_options(pair, schemeOpts);
    pair->add_option("--matrix", matrixArg, "matrix: catalog name or JSON file")->required();

    auto* verify = app.add_subcommand("verify", "spectral-norm sweep of R(tau L)");
    add_scheme_options(verify, schemeOpts);
    verify->add_option("--matrix", matrixArg, "matrix: catalog name or JSON file")->required();
    verify->add_option("--weight", weightArg,
                       "weight matrix (catalog name, JSON file, or 'auto' for a "
                       "Lyapunov-solver weight)");
    addGrid(verify);

    auto* fitExp = app.add_subcommand("fit-exponent", "short-time exponent of ||exp(tau L)||");
    addMatrix(fitExp, true);

    auto* gram = app.add_subcommand("gram-defect", "decay order of ||G(tau) - Q(tau)||");
    add_scheme_options(gram, schemeOpts);
    gram->add_option("--matrix", matrixArg, "matrix: catalog name or JSON file")->required();
    addGrid(gram);

    auto* catalogCmd = app.add_subcommand("catalog", "built-in fixtures");
    auto* catalogList = catalogCmd->add_subcommand("list", "list schemes and matrices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze_scheme(schemeOpts, format);
        if (hcIndex->parsed()) return cmd_hc_index(matrixArg, tolEig, tolRank, format);
        if (stair->parsed()) return cmd_staircase(matrixArg, tolRank, format);
        if (blockDiag->parsed()) return cmd_block_diag(matrixArg, tolRank, format);
        if (pair->parsed()) return cmd_classify_pair(schemeOpts, matrixArg, format);
        if (verify->parsed()) return cmd_verify(schemeOpts, matrixArg, weightArg, gridOpts, format);
        if (fitExp->parsed()) return cmd_fit_exponent(matrixArg, format);
        if (gram->parsed()) return cmd_gram_defect(schemeOpts, matrixArg, gridOpts, format);
        if (catalogCmd->parsed()) {
            if (catalogList->parsed()) return cmd_catalog_list();
            std::fprintf(stderr, "error: catalog requires a subcommand (list)\n");
            return kExitError;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
