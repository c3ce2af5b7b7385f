#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "narep/commands.hpp"
#include "narep/errors.hpp"
#include "narep/expected_solutions.hpp"

using namespace narep;

namespace {

struct CliRun {
    int status;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(NAREP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int raw = pclose(p);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

RunConfig csv_config() {
    RunConfig cfg;
    cfg.output_format = OutputFormat::Csv;
    return cfg;
}

} // namespace

TEST_CASE("seq prints the requested terms") {
    std::ostringstream out;
    CHECK(cmd_seq(28, 31, csv_config(), out) == kExitOk);
    CHECK(out.str() == "n,value\n28,18560\n29,27201\n30,39865\n31,58425\n");

    std::ostringstream start;
    cmd_seq(0, 3, csv_config(), start);
    CHECK(start.str() == "n,value\n0,0\n1,1\n2,1\n3,1\n");

    std::ostringstream neg;
    cmd_seq(-4, -1, csv_config(), neg);
    CHECK(neg.str() == "n,value\n-4,-1\n-3,0\n-2,1\n-1,0\n");
}

TEST_CASE("search output") {
    RunConfig cfg = csv_config();
    cfg.n_max = 30;
    std::ostringstream out;
    CHECK(cmd_search(cfg, out) == kExitOk);
    const std::string s = out.str();
    CHECK(s.rfind("n,value,base,digits,patterns\n", 0) == 0);
    CHECK(s.find("8,9,3,100,1^1 0^1 0^1\n") != std::string::npos);
    CHECK(s.find(",277,10,277,") != std::string::npos);

    cfg.output_format = OutputFormat::Json;
    std::ostringstream js;
    cmd_search(cfg, js);
    const auto doc = nlohmann::json::parse(js.str());
    REQUIRE(doc.is_array());
    for (const auto& row : doc) {
        for (const auto& [key, _] : row.items()) {
            CHECK(key.find_first_not_of("abcdefghijklmnopqrstuvwxyz_") == std::string::npos);
        }
    }
    CHECK(doc.front()["n"].is_number());
}

TEST_CASE("configuration is validated") {
    RunConfig cfg;
    cfg.base_min = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.base_max = 65;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.n_max = 3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.precision_bits = 100;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.parallel_workers = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.M = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_NOTHROW(RunConfig{}.validate());
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);

    std::ostringstream out;
    RunConfig narrow;
    narrow.base_max = 5;
    CHECK_THROWS_AS(cmd_verify(narrow, out), ConfigError);
    CHECK_THROWS_AS(cmd_reduce(2, "4", 0, 0, RunConfig{}, out), ConfigError);
}

TEST_CASE("precision from the environment") {
    setenv(kPrecisionEnv, "2048", 1);
    CHECK(default_precision() == 2048);
    setenv(kPrecisionEnv, "lots", 1);
    CHECK_THROWS_AS(default_precision(), ConfigError);
    unsetenv(kPrecisionEnv);
    CHECK(default_precision() == 1024);
}

TEST_CASE("reduce reports one row per step") {
    RunConfig cfg = csv_config();
    std::ostringstream out;
    CHECK(cmd_reduce(3, "2", 0, 0, cfg, out) == kExitOk);
    std::istringstream lines(out.str());
    std::string header;
    std::string row;
    std::getline(lines, header);
    CHECK(header == "step,rho,convergent_index,q,epsilon_lower,bound,w_max,cases_evaluated,duplicates_skipped,"
                    "worst_case,status");
    REQUIRE(std::getline(lines, row));
    CHECK(row.rfind("2,3,", 0) == 0);
    CHECK_FALSE(std::getline(lines, row));
}

TEST_CASE("expected solution list is consistent") {
    CHECK_NOTHROW(self_check_expected_solutions());
    CHECK(expected_solutions().size() == 21);
}

TEST_CASE("binary exit codes") {
    CHECK(run_cli("").status == kExitUsage);
    CHECK(run_cli("seq").status == kExitUsage);
    CHECK(run_cli("search --format yaml").status == kExitUsage);
    CHECK(run_cli("search --base-min 1").status == kExitUsage);
    CHECK(run_cli("seq 0 -3").status == kExitUsage);
    CHECK(run_cli("seq 0 999999999").status == kExitUsage);
    CHECK(run_cli("reduce --rho 3 --step 1 --big-m 2e51").status == kExitOk);
    CHECK(run_cli("reduce --rho 3 --big-m 2x51").status == kExitUsage);

    const CliRun seq = run_cli("seq 28 31 --format csv");
    CHECK(seq.status == kExitOk);
    CHECK(seq.out == "n,value\n28,18560\n29,27201\n30,39865\n31,58425\n");
}

TEST_CASE("verify matches the solution list") {
    const CliRun v = run_cli("verify --format json --workers 4");
    CHECK(v.status == kExitOk);
    const auto doc = nlohmann::json::parse(v.out);
    CHECK(doc["summary"][0]["result"] == "match");
    CHECK(doc["comparison"].size() == 21);
}
