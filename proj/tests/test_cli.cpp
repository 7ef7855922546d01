// End-to-end checks of the command-line interface: exit-code contract,
// output determinism, and the JSON round-trip guarantee. Runs the installed
// binary via popen.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef RKCERT_CLI_PATH
#error "RKCERT_CLI_PATH must point at the rkcert binary"
#endif

namespace {

struct RunResult {
    int exitCode = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(RKCERT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/rkcert_cli_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("analyze-scheme exit codes follow the verdict") {
    CHECK(run_cli("analyze-scheme --catalog rk4").exitCode == 3);
    CHECK(run_cli("analyze-scheme --catalog heun3").exitCode == 0);
    CHECK(run_cli("analyze-scheme --catalog euler").exitCode == 3);

    // undecided: order 4 with s = 6 and no rule firing
    const std::string poly =
        write_temp("undecided.json", R"({"c": [1, 1, 1, 1, 1, 0.95, 1]})");
    CHECK(run_cli("analyze-scheme --poly " + poly).exitCode == 4);
}

TEST_CASE("exit codes are a function of the verdict, not the rendering") {
    for (const char* fmt : {"text", "json"}) {
        CHECK(run_cli(std::string("analyze-scheme --catalog rk4 --format ") + fmt).exitCode == 3);
        CHECK(run_cli(std::string("analyze-scheme --catalog heun3 --format ") + fmt).exitCode == 0);
    }
}

TEST_CASE("hc-index reports both methods") {
    const RunResult r = run_cli("hc-index --catalog sunshu --format json");
    CHECK(r.exitCode == 0);
    const auto j = nlohmann::ordered_json::parse(r.output);
    CHECK(j["m_hc_definitional"] == 2);
    CHECK(j["m_hc_staircase"] == 2);
    CHECK(j["r"] == 4);
    CHECK(j["block_sizes"] == nlohmann::ordered_json::array({1, 1, 1, 0}));
    CHECK(j["rank_decisions"].size() == 3);

    const RunResult lt = run_cli("hc-index --catalog levytadmor --format json");
    const auto jlt = nlohmann::ordered_json::parse(lt.output);
    CHECK(jlt["m_hc_definitional"] == 4);
    CHECK(jlt["m_hc_staircase"] == 4);

    const RunResult mi = run_cli("hc-index --catalog minus-identity --format json");
    CHECK(nlohmann::ordered_json::parse(mi.output)["m_hc_definitional"] == 0);
}

TEST_CASE("hc-index rejects non-semi-dissipative input with a diagnostic") {
    const RunResult r = run_cli("hc-index --catalog w");
    CHECK(r.exitCode == 2);
    CHECK(r.output.find("not semi-dissipative") != std::string::npos);
    CHECK(r.output.find("largest eigenvalue") != std::string::npos);
}

TEST_CASE("verify exit codes distinguish violation from certification") {
    CHECK(run_cli("verify --catalog rk4 --matrix sunshu "
                  "--grid-min 1e-6 --grid-max 1e-1").exitCode == 3);
    CHECK(run_cli("verify --catalog rk4 --matrix sunshu --weight ww-star "
                  "--grid-min 1e-6 --grid-max 1e-1").exitCode == 0);
    CHECK(run_cli("verify --catalog rk4 --matrix sunshu --weight auto "
                  "--grid-min 1e-6 --grid-max 1e-1").exitCode == 0);
    CHECK(run_cli("verify --catalog rk4 --matrix sunshu --weight minus-identity").exitCode == 2);
}

TEST_CASE("verify CSV output carries the documented columns") {
    const RunResult r = run_cli("verify --catalog rk4 --matrix sunshu --format csv "
                                "--grid-points 20");
    CHECK(r.output.rfind("tau,norm,excess\n", 0) == 0);
    int lines = 0;
    for (char c : r.output)
        if (c == '\n') ++lines;
    CHECK(lines == 21);
}

TEST_CASE("classify-pair and fit-exponent") {
    CHECK(run_cli("classify-pair --catalog rk4 --matrix sunshu").exitCode == 3);
    CHECK(run_cli("classify-pair --catalog rk4 --matrix minus-identity").exitCode == 0);

    const RunResult fit = run_cli("fit-exponent --matrix sunshu --format json");
    CHECK(fit.exitCode == 0);
    const auto j = nlohmann::ordered_json::parse(fit.output);
    CHECK(std::abs(j["a_hat"].get<double>() - 5.0) <= 0.15);
}

TEST_CASE("gram-defect reports the fitted order") {
    const RunResult r = run_cli("gram-defect --catalog rk4 --matrix sunshu --format json");
    CHECK(r.exitCode == 0);
    const auto j = nlohmann::ordered_json::parse(r.output);
    CHECK(std::abs(j["fitted_order"].get<double>() - 5.0) <= 0.1);
}

TEST_CASE("emitted JSON re-parses and re-renders byte-identically") {
    for (const std::string args :
         {std::string("analyze-scheme --catalog rk4 --format json"),
          std::string("hc-index --catalog levytadmor --format json"),
          std::string("verify --catalog rk4 --matrix sunshu --format json"),
          std::string("fit-exponent --matrix sunshu --format json"),
          std::string("gram-defect --catalog rk4 --matrix sunshu --format json")}) {
        const RunResult r = run_cli(args);
        const auto parsed = nlohmann::ordered_json::parse(r.output);
        CHECK(parsed.dump(2) + "\n" == r.output);
    }
}

TEST_CASE("identical invocations produce identical output") {
    const std::string args = "verify --catalog rk4 --matrix levytadmor --format csv";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.output == b.output);
    CHECK(a.exitCode == b.exitCode);
}

TEST_CASE("matrix files work alongside catalog names") {
    const std::string path = write_temp(
        "stable.json", R"({"n": 2, "entries": [[-1, 0], [0, -2]]})");
    CHECK(run_cli("classify-pair --catalog rk4 --matrix " + path).exitCode == 0);
    CHECK(run_cli("hc-index --matrix " + path).exitCode == 0);
}

TEST_CASE("malformed input exits with code 2") {
    const std::string bad = write_temp("bad.json", "{ not json");
    CHECK(run_cli("analyze-scheme --tableau " + bad).exitCode == 2);
    CHECK(run_cli("analyze-scheme --catalog does-not-exist").exitCode == 2);
    CHECK(run_cli("hc-index --matrix /nonexistent/path.json").exitCode == 2);
    CHECK(run_cli("analyze-scheme").exitCode == 2);
}

TEST_CASE("staircase and block-diag commands run on the fixtures") {
    const RunResult st = run_cli("staircase --catalog levytadmor --format json");
    CHECK(st.exitCode == 0);
    const auto j = nlohmann::ordered_json::parse(st.output);
    CHECK(j["r"] == 6);

    const RunResult bd = run_cli("block-diag --catalog sunshu --format json");
    CHECK(bd.exitCode == 0);
    const auto jb = nlohmann::ordered_json::parse(bd.output);
    CHECK(jb["n1"] == 3);
    CHECK(jb["n2"] == 0);
}

TEST_CASE("catalog list names the bundled fixtures") {
    const RunResult r = run_cli("catalog list");
    CHECK(r.exitCode == 0);
    for (const char* name : {"rk4", "euler", "heun3", "texp8", "sunshu", "levytadmor",
                             "ww-star", "minus-identity"})
        CHECK(r.output.find(name) != std::string::npos);
}
