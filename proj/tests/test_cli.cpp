#include <doctest.h>

#include <json.hpp>

#include "logsyn/cli.hpp"

using namespace logsyn;
using cli::RunConfig;

TEST_CASE("dispatch is byte-deterministic") {
    RunConfig config;
    config.command = "syntomic";
    config.p = 2;
    config.e = 2;
    config.i = 1;
    auto a = cli::dispatch(config);
    auto b = cli::dispatch(config);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    config.command = "logtc";
    config.range = {{-2, 5}};
    CHECK(cli::dispatch(config).output == cli::dispatch(config).output);
}

TEST_CASE("json schema of the syntomic report") {
    RunConfig config;
    config.command = "syntomic";
    config.p = 2;
    config.e = 2;
    config.i = 1;
    auto result = cli::dispatch(config);
    auto j = nlohmann::json::parse(result.output);
    for (const char* key : {"command", "p", "e", "i", "precision", "result", "pass"})
        CHECK(j.contains(key));
    CHECK(j["pass"] == true);
    CHECK(j["result"].size() == 3);
    // H1 holds one free-at-cap and one torsion factor of exponent 1
    bool cap = false, torsion = false;
    for (const auto& f : j["result"][1]) {
        if (f["type"] == "free-at-cap") cap = true;
        if (f["type"] == "torsion" && f["exp"] == 1) torsion = true;
    }
    CHECK(cap);
    CHECK(torsion);
}

TEST_CASE("exit codes") {
    RunConfig config;
    config.command = "syntomic";
    config.p = 2;
    config.e = 2;
    config.i = 1;
    SUBCASE("pass is zero") { CHECK(cli::dispatch(config).exit_code == 0); }
    SUBCASE("insufficient precision is 3") {
        config.precision = 1;
        CHECK(cli::dispatch(config).exit_code == 3);
    }
    SUBCASE("usage error is 1") {
        config.p = 4;
        CHECK(cli::dispatch(config).exit_code == 1);
    }
    SUBCASE("fan mismatch is 2") {
        RunConfig fan;
        fan.command = "fan-verify-axes";
        fan.ray = {1, 1};
        CHECK(cli::dispatch(fan).exit_code == 2);
        fan.ray = {-1, 1};
        CHECK(cli::dispatch(fan).exit_code == 0);
    }
}

TEST_CASE("witt decompose output") {
    RunConfig config;
    config.command = "witt-decompose";
    config.p = 2;
    config.witt_m = 5;
    auto result = cli::dispatch(config);
    auto j = nlohmann::json::parse(result.output);
    CHECK(j["result"] == nlohmann::json::parse("[[1,3],[3,1],[5,1]]"));
}

TEST_CASE("text format renders W and big Witt expansions") {
    RunConfig config;
    config.command = "logtc";
    config.p = 2;
    config.e = 2;
    config.range = {{3, 3}};
    config.format = "text";
    auto result = cli::dispatch(config);
    CHECK(result.output.find("bW_3 (= Z/4 + Z/2)") != std::string::npos);

    config.command = "syntomic";
    config.i = 1;
    auto syn = cli::dispatch(config);
    CHECK(syn.output.find("H1: W + Z/2") != std::string::npos);
    CHECK(syn.output.find("H2: W") != std::string::npos);
}
