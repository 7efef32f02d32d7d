#pragma once

#include <optional>
#include <string>
#include <utility>

namespace logsyn::cli {

// Exit codes: 0 success/PASS, 1 usage error, 2 closed-form mismatch,
// 3 precision or stabilization failure.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kMismatch = 2,
    kPrecision = 3,
};

struct RunConfig {
    std::string command;  // syntomic | logtc | descent | nilinv | axes |
                          // fan-verify-axes | witt-decompose | perfection
    long long p = 2;
    long long e = 1;
    long long i = 0;
    std::optional<std::pair<long long, long long>> range;  // logtc degrees
    std::optional<int> precision;
    std::optional<long long> orbit_bound;
    std::string format = "json";  // json | text

    long long witt_m = 0;                     // witt-decompose
    int denom_bound = 3;                      // perfection
    long long height_bound = 10;              // perfection
    std::pair<long long, long long> ray = {-1, 1};  // fan-verify-axes control
};

struct RunResult {
    int exit_code = kOk;
    std::string output;  // byte-deterministic for a fixed config
};

RunResult dispatch(const RunConfig& config);

// full argv interface: parse, dispatch, print; returns the process exit code
int run_main(int argc, const char* const* argv);

}  // namespace logsyn::cli
