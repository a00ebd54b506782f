#include "doctest.h"

#include <nlohmann/json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Subprocess tests for the gossipsim binary. CTest provides its path via
// GOSSIPSIM_BIN; when running the unit binary by hand without it, these cases
// are skipped.

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

const char* cli_path() { return std::getenv("GOSSIPSIM_BIN"); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CommandResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::string out_path =
        "/tmp/gossipsim_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++);
    const std::string command =
        env_prefix + std::string(cli_path()) + " " + args + " > " + out_path + " 2>/dev/null";
    const int raw = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WEXITSTATUS(raw);
    result.out = slurp(out_path);
    std::remove(out_path.c_str());
    return result;
}

}  // namespace

#define REQUIRE_CLI()                                        \
    if (cli_path() == nullptr) {                             \
        MESSAGE("GOSSIPSIM_BIN not set; skipping CLI test"); \
        return;                                              \
    }

TEST_CASE("cli: gen writes the documented edge counts") {
    REQUIRE_CLI();
    const CommandResult chain = run_cli("gen --kind star-chain --d 2 --delta 3");
    CHECK(chain.exit_code == 0);
    CHECK(std::count(chain.out.begin(), chain.out.end(), '\n') == 7);

    const CommandResult complete = run_cli("gen --kind complete --n 4");
    CHECK(complete.exit_code == 0);
    CHECK(std::count(complete.out.begin(), complete.out.end(), '\n') == 6);
}

TEST_CASE("cli: gen is deterministic for a fixed seed") {
    REQUIRE_CLI();
    const std::string args = "gen --kind random-regular --n 16 --degree 4 --seed 7";
    const CommandResult a = run_cli(args);
    const CommandResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const CommandResult c = run_cli("gen --kind random-regular --n 16 --degree 4 --seed 8");
    CHECK(c.out != a.out);
}

TEST_CASE("cli: run prints the completion round") {
    REQUIRE_CLI();
    const CommandResult star = run_cli("run --kind star --delta 4 --protocol pull --source 0");
    CHECK(star.exit_code == 0);
    CHECK(star.out == "4\n");

    const CommandResult pair = run_cli("run --kind complete --n 2 --protocol push");
    CHECK(pair.exit_code == 0);
    CHECK(pair.out == "1\n");
}

TEST_CASE("cli: identical run invocations give identical trace bytes") {
    REQUIRE_CLI();
    const std::string t1 = "/tmp/gossipsim_trace1_" + std::to_string(getpid());
    const std::string t2 = "/tmp/gossipsim_trace2_" + std::to_string(getpid());
    const std::string args =
        "run --kind star-chain --d 2 --delta 4 --protocol pull --seed 9 --trace ";
    CHECK(run_cli(args + t1).exit_code == 0);
    CHECK(run_cli(args + t2).exit_code == 0);
    const std::string a = slurp(t1);
    CHECK(!a.empty());
    CHECK(a == slurp(t2));
    std::remove(t1.c_str());
    std::remove(t2.c_str());
}

TEST_CASE("cli: exit codes distinguish censoring, usage and io errors") {
    REQUIRE_CLI();
    CHECK(run_cli("run --kind star --delta 8 --protocol pull --max-rounds 2").exit_code == 2);
    CHECK(run_cli("couple --kind star --delta 2 --seeds 0").exit_code == 1);
    CHECK(run_cli("run --graph /nonexistent.el --protocol push").exit_code == 3);
    CHECK(run_cli("gen --kind star --delta 0").exit_code == 1);
    CHECK(run_cli("run --kind star --delta 4 --protocol nonsense").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("run --help").exit_code == 0);
}

TEST_CASE("cli: GOSSIP_SEED supplies the seed, flags win") {
    REQUIRE_CLI();
    const std::string args = "run --kind complete --n 64 --protocol push";
    const CommandResult env7 = run_cli(args, "GOSSIP_SEED=7 ");
    const CommandResult flag7 = run_cli(args + " --seed 7");
    const CommandResult flag9 = run_cli(args + " --seed 9", "GOSSIP_SEED=7 ");
    const CommandResult plain9 = run_cli(args + " --seed 9");
    CHECK(env7.out == flag7.out);
    CHECK(flag9.out == plain9.out);
}

TEST_CASE("cli: couple reports push equality as JSON") {
    REQUIRE_CLI();
    const CommandResult result =
        run_cli("couple --kind complete --n 8 --protocol push --seeds 5 --no-traces");
    CHECK(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j.at("all_equal_every_round") == true);
    CHECK(j.at("divergences") == 0);
    CHECK(j.at("reports").size() == 5);
}

TEST_CASE("cli: bounds renders json on request") {
    REQUIRE_CLI();
    const CommandResult result =
        run_cli("bounds --kind star --delta 8 --format json");
    CHECK(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j.at("graph") == "star-8");
    CHECK(j.at("e_max_exact") == "8/1");
    CHECK(j.at("star_chain_lower") == 8.0);
}

TEST_CASE("cli: experiment emits summary csv and is jobs-invariant") {
    REQUIRE_CLI();
    const std::string plan_path = "/tmp/gossipsim_plan_" + std::to_string(getpid()) + ".json";
    {
        std::ofstream plan(plan_path);
        plan << R"({"graphs":[{"kind":"star","delta":4}],"protocol":"pull",
                    "model":"buffered","trials":6,"sources":{"fixed":0},
                    "base_seed":3,"max_rounds":1000})";
    }
    const std::string r1 = "/tmp/gossipsim_res1_" + std::to_string(getpid());
    const std::string r2 = "/tmp/gossipsim_res2_" + std::to_string(getpid());
    const CommandResult a = run_cli("experiment " + plan_path + " --results " + r1);
    const CommandResult b = run_cli("experiment " + plan_path + " --results " + r2 + " --jobs 4");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);  // summary CSV on stdout
    CHECK(a.out.rfind("graph_id,protocol,model,source,trials,mean", 0) == 0);
    CHECK(a.out.find("star-4,pull,buffered,0,6,4.000000") != std::string::npos);
    CHECK(slurp(r1) == slurp(r2));
    std::remove(plan_path.c_str());
    std::remove(r1.c_str());
    std::remove(r2.c_str());
}

TEST_CASE("cli: failed commands do not leave output files behind") {
    REQUIRE_CLI();
    const std::string out = "/tmp/gossipsim_noout_" + std::to_string(getpid());
    CHECK(run_cli("gen --kind star --delta 0 --out " + out).exit_code == 1);
    std::ifstream probe(out);
    CHECK(!probe.good());
}
