#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "snowcone/cli.hpp"

using namespace snowcone;

namespace {
struct RunResult {
    int exit_code;
    nlohmann::ordered_json report;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    RunResult r{code, {}, err.str()};
    if (!out.str().empty() && out.str()[0] == '{') r.report = nlohmann::ordered_json::parse(out.str());
    return r;
}

void strip_timing(nlohmann::ordered_json& j) {
    if (j.is_object()) {
        j.erase("timing");
        for (auto& [k, v] : j.items()) {
            (void)k;
            strip_timing(v);
        }
    } else if (j.is_array()) {
        for (auto& v : j) strip_timing(v);
    }
}

nlohmann::ordered_json load_golden(const std::string& name) {
    std::ifstream f(std::string(SNOWCONE_GOLDEN_DIR) + "/" + name);
    REQUIRE(f.good());
    nlohmann::ordered_json j;
    f >> j;
    return j;
}
}  // namespace

TEST_CASE("usage and config errors exit 1", "[cli]") {
    CHECK(run({"graph", "--ks", "2,x"}).exit_code == 1);
    CHECK(run({"graph", "--ks", "2,,3"}).exit_code == 1);
    CHECK(run({"graph", "--ks", "1,2"}).exit_code == 1);
    CHECK(run({"cones", "--policy", "nope"}).exit_code == 1);
    CHECK(run({"no-such-subcommand"}).exit_code == 1);
    CHECK(run({}).exit_code == 1);
}

TEST_CASE("config file validation", "[cli]") {
    CHECK_THROWS_AS(parse_config_json(nlohmann::json::parse(R"({"chian": {}})")), ConfigError);
    CHECK_THROWS_AS(parse_config_json(nlohmann::json::parse(R"({"chain": {"kz": [2]}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_json(nlohmann::json::parse(R"({"epsilons": [1.5]})")), ConfigError);
    CHECK_THROWS_AS(parse_config_json(nlohmann::json::parse(R"({"delta1": -1})")), ConfigError);
    RunConfig c = parse_config_json(nlohmann::json::parse(
        R"({"chain": {"ks": [2,3,4]}, "epsilons": [0.5], "delta1": 0.02,
            "x4": {"M": 5}, "certify": {"tol": 0, "max_depth": 30}, "seed": 7})"));
    CHECK(c.chain_ks == std::vector<long long>{2, 3, 4});
    CHECK(c.x4.M == 5.0);
    CHECK(c.certify_max_depth == 30);
    CHECK(c.seed == 7);
}

TEST_CASE("base subcommand certifies and reports", "[cli]") {
    RunResult r = run({"base", "--eps", "0.5", "--delta", "0.01"});
    CHECK(r.exit_code == 0);
    REQUIRE(r.report.is_object());
    CHECK(r.report["kind"] == "base-model");
    CHECK(r.report["stage"]["certified"] == true);
    int n = 0;
    for (const auto& c : r.report["stage"]["certificates"])
        if (c["status"] == "certified") ++n;
    CHECK(n >= 3);
}

TEST_CASE("equivariance subcommand residuals", "[cli]") {
    RunResult r = run({"equivariance", "--k", "3", "--samples", "1000"});
    CHECK(r.exit_code == 0);
    CHECK(r.report["max_left_equivariance_residual"].get<double>() < 1e-12);
    CHECK(r.report["max_right_equivariance_residual"].get<double>() < 1e-12);
}

TEST_CASE("frame-ricci subcommand round values", "[cli]") {
    RunResult r = run({"frame-ricci", "--k", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.report["max_offdiag"].get<double>() < 1e-10);
    CHECK(r.report["max_diag_gap_from_2"].get<double>() < 1e-10);
}

TEST_CASE("extend subcommand", "[cli]") {
    RunResult r = run({"extend", "--eps", "0.5", "--eps-prime", "0.4996", "--k", "3",
                       "--eps-hat", "0.01", "--delta", "0.01"});
    CHECK(r.exit_code == 0);
    CHECK(r.report["wrap_residual"].get<double>() < 1e-12);
    CHECK(r.report["annulus"]["certified"] == true);
    CHECK(r.report["neck_stage"]["certified"] == true);
}

TEST_CASE("reports are deterministic modulo timing", "[cli]") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"cones", "--policy", "cyclic-integers", "--bound", "6"},
          {"graph", "--ks", "2,3,4"},
          {"base", "--eps", "0.5", "--delta", "0.01"}}) {
        RunResult a = run(args), b = run(args);
        strip_timing(a.report);
        strip_timing(b.report);
        CHECK(a.report.dump() == b.report.dump());
    }
}

TEST_CASE("golden reports", "[cli]") {
    struct Case {
        std::vector<std::string> args;
        const char* file;
    };
    for (const Case& c : {Case{{"cones", "--policy", "cyclic-integers", "--bound", "6"}, "cones.json"},
                          Case{{"graph", "--ks", "2,3"}, "graph.json"},
                          Case{{"base", "--eps", "0.5", "--delta", "0.01"}, "base.json"}}) {
        RunResult r = run(c.args);
        REQUIRE(r.exit_code == 0);
        strip_timing(r.report);
        nlohmann::ordered_json want = load_golden(c.file);
        strip_timing(want);
        INFO(c.file);
        CHECK(r.report.dump(2) == want.dump(2));
    }
}

TEST_CASE("twist subcommand exit code contract", "[cli]") {
    // A full run is exercised in the acceptance suite; here the parameter
    // validation path.
    RunResult r = run({"twist", "--eps", "0.9", "--delta", "0.01", "--k", "1"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("eps") != std::string::npos);
}
