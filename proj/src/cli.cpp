#include "logsyn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "logsyn/logtc.hpp"
#include "logsyn/syntomic.hpp"
#include "logsyn/toric.hpp"
#include "logsyn/witt.hpp"

namespace logsyn::cli {

using json = nlohmann::ordered_json;

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int t = 0; t < e; ++t) r *= b;
    return r;
}

json factor_json(int precision, int exp) {
    if (exp >= precision) return json{{"type", "free-at-cap"}};
    return json{{"type", "torsion"}, {"exp", exp}};
}

json module_json(const padic::FinPModule& m) {
    json arr = json::array();
    // largest factors first so free summands lead
    for (auto it = m.exponents.rbegin(); it != m.exponents.rend(); ++it)
        arr.push_back(factor_json(m.precision, *it));
    return arr;
}

std::string factor_text(long long p, int precision, int exp) {
    if (exp >= precision) return "W";
    return "Z/" + std::to_string(pow_ll(p, exp));
}

std::string module_text(const padic::FinPModule& m) {
    if (m.exponents.empty()) return "0";
    std::string out;
    for (auto it = m.exponents.rbegin(); it != m.exponents.rend(); ++it) {
        if (!out.empty()) out += " + ";
        out += factor_text(m.p, m.precision, *it);
    }
    return out;
}

std::string descriptor_text(const logtc::Descriptor& d, long long p) {
    if (d.is_zero()) return "0";
    std::string out;
    for (int t = 0; t < d.witt_count; ++t) out += out.empty() ? "W" : " + W";
    if (d.big_witt_m) {
        if (!out.empty()) out += " + ";
        out += "bW_" + std::to_string(*d.big_witt_m);
        auto shape = witt::ptypical_decomposition(p, *d.big_witt_m);
        std::string inner;
        for (auto [j, sj] : shape.components) {
            if (!inner.empty()) inner += " + ";
            inner += "Z/" + std::to_string(pow_ll(p, sj));
        }
        out += " (= " + (inner.empty() ? "0" : inner) + ")";
    }
    return out;
}

json checks_json(const Report& rep) {
    json arr = json::array();
    for (const CheckItem& item : rep.items) {
        json j{{"name", item.name}, {"pass", item.pass}};
        if (!item.detail.empty()) j["detail"] = item.detail;
        arr.push_back(j);
    }
    return arr;
}

void checks_text(std::ostringstream& os, const Report& rep) {
    for (const CheckItem& item : rep.items) {
        os << "  " << (item.pass ? "PASS  " : "FAIL  ") << item.name;
        if (!item.detail.empty()) os << "  [" << item.detail << "]";
        os << "\n";
    }
}

struct PrecisionError {
    std::string message;
};

// chosen precision, gated: at least 2 and strictly above every expected
// torsion exponent, so torsion separates from free summands
int gated_precision(const RunConfig& config, int s_max, int auto_n) {
    int n = config.precision.value_or(auto_n);
    if (n < 2 || n <= s_max) {
        std::ostringstream os;
        os << "insufficient precision " << n << ": need at least " << std::max(s_max + 1, 2)
           << " to separate torsion (max expected exponent " << s_max << ")";
        throw PrecisionError{os.str()};
    }
    return n;
}

RunResult emit(const RunConfig& config, const json& body, const std::string& text,
               bool pass, int code_on_fail = kMismatch) {
    RunResult out;
    out.exit_code = pass ? kOk : code_on_fail;
    if (config.format == "json") {
        out.output = body.dump(2) + "\n";
    } else {
        out.output = text;
    }
    return out;
}

json base_json(const RunConfig& config, std::optional<long long> e,
               std::optional<long long> i, std::optional<int> precision) {
    json j;
    j["command"] = config.command;
    j["p"] = config.p;
    j["e"] = e ? json(*e) : json(nullptr);
    j["i"] = i ? json(*i) : json(nullptr);
    j["precision"] = precision ? json(*precision) : json(nullptr);
    return j;
}

RunResult run_syntomic(const RunConfig& config) {
    int s_max = syntomic::max_torsion_exponent(
        config.p, config.e, config.i,
        config.orbit_bound.value_or(syntomic::default_orbit_bound(config.p, config.e, config.i)));
    int n = gated_precision(config, s_max,
                            syntomic::default_precision(config.p, config.e, config.i));
    long long bound =
        config.orbit_bound.value_or(syntomic::default_orbit_bound(config.p, config.e, config.i));

    prismatic::ModelParams at_n{config.p, config.e, true, n};
    prismatic::ModelParams at_n1{config.p, config.e, true, n + 1};
    auto r_n = syntomic::syntomic_total(at_n, config.i, bound);
    auto r_n1 = syntomic::syntomic_total(at_n1, config.i, bound);
    auto cf = syntomic::closed_form(config.e, config.i);
    Report rep = syntomic::compare(r_n, r_n1, cf);

    json j = base_json(config, config.e, config.i, n);
    j["orbit_bound"] = bound;
    json result = json::array();
    for (int d = 0; d < 3; ++d) result.push_back(module_json(r_n.h[d]));
    j["result"] = result;
    j["pass"] = rep.pass;
    j["checks"] = checks_json(rep);

    std::ostringstream os;
    os << "syntomic p=" << config.p << " e=" << config.e << " i=" << config.i << " N=" << n
       << " orbit-bound=" << bound << "\n";
    for (int d = 0; d < 3; ++d) os << "  H" << d << ": " << module_text(r_n.h[d]) << "\n";
    checks_text(os, rep);
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
    return emit(config, j, os.str(), rep.pass);
}

RunResult run_logtc(const RunConfig& config) {
    auto [lo, hi] = config.range.value_or(std::make_pair<long long, long long>(-2, 9));
    long long i_max = std::max<long long>(0, (hi + 2) / 2);
    int s_max = 0;
    for (long long i = 0; i <= i_max; ++i)
        s_max = std::max(s_max, syntomic::max_torsion_exponent(
                                    config.p, config.e, i,
                                    syntomic::default_orbit_bound(config.p, config.e, i)));
    int n = gated_precision(config, s_max, s_max + 3);

    logtc::HomotopyTable table = logtc::logtc_table(config.e, config.p, lo, hi, n);

    json j = base_json(config, config.e, std::nullopt, n);
    j["range"] = json::array({lo, hi});
    json rows = json::array();
    for (const auto& entry : table.entries) {
        json row;
        row["degree"] = entry.degree;
        row["descriptor"] = descriptor_text(entry.descriptor, config.p);
        row["factors"] = module_json(entry.realization);
        rows.push_back(row);
    }
    j["result"] = rows;
    j["pass"] = true;

    std::ostringstream os;
    os << "logtc p=" << config.p << " e=" << config.e << " degrees " << lo << ".." << hi
       << " N=" << n << "\n";
    for (const auto& entry : table.entries)
        os << "  pi_" << entry.degree << " = " << descriptor_text(entry.descriptor, config.p)
           << "\n";
    os << "PASS\n";
    return emit(config, j, os.str(), true);
}

RunResult run_descent(const RunConfig& config) {
    int s_max = syntomic::max_torsion_exponent(
        config.p, 1, config.i, syntomic::default_orbit_bound(config.p, 1, config.i));
    int n = gated_precision(config, s_max, syntomic::default_precision(config.p, 1, config.i));
    Report rep = syntomic::descent_square_check(config.p, config.i, n);

    json j = base_json(config, std::nullopt, config.i, n);
    j["result"] = checks_json(rep);
    j["pass"] = rep.pass;

    std::ostringstream os;
    os << "descent p=" << config.p << " i=" << config.i << " N=" << n << "\n";
    checks_text(os, rep);
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
    return emit(config, j, os.str(), rep.pass);
}

RunResult run_nilinv(const RunConfig& config) {
    int s_max = syntomic::max_torsion_exponent(
        config.p, config.e, config.i,
        syntomic::default_orbit_bound(config.p, config.e, config.i));
    int n = gated_precision(config, s_max,
                            syntomic::default_precision(config.p, config.e, config.i));
    Report rep = syntomic::nil_invariance_check(config.e, config.p, config.i, n);

    json j = base_json(config, config.e, config.i, n);
    j["result"] = checks_json(rep);
    j["pass"] = rep.pass;

    std::ostringstream os;
    os << "nilinv p=" << config.p << " e=" << config.e << " i=" << config.i << " N=" << n
       << "\n";
    checks_text(os, rep);
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
    return emit(config, j, os.str(), rep.pass);
}

RunResult run_axes(const RunConfig& config) {
    int s_max = 0;
    for (long long idx : {config.i, config.i - 1})
        if (idx >= 0)
            s_max = std::max(s_max, syntomic::max_torsion_exponent(
                                        config.p, 1, idx,
                                        syntomic::default_orbit_bound(config.p, 1, idx)));
    int n = gated_precision(config, s_max, s_max + 3);
    toric::AxesTable table = toric::axes_table(config.p, config.i, n);

    json j = base_json(config, std::nullopt, config.i, n);
    json rows = json::array();
    for (int d = 0; d < 5; ++d) {
        json row;
        row["degree"] = d;
        row["descriptor"] = table.descriptor[d];
        row["factors"] = module_json(table.h[d]);
        rows.push_back(row);
    }
    j["result"] = rows;
    j["pass"] = table.pass;

    std::ostringstream os;
    os << "axes p=" << config.p << " i=" << config.i << " N=" << n << "\n";
    for (int d = 0; d < 5; ++d)
        os << "  H" << d << ": " << module_text(table.h[d]) << "   (" << table.descriptor[d]
           << ")\n";
    os << (table.pass ? "PASS" : "FAIL") << "\n";
    return emit(config, j, os.str(), table.pass);
}

RunResult run_fan_verify_axes(const RunConfig& config) {
    Report rep = toric::verify_axes_proof(toric::Vec2{config.ray.first, config.ray.second});

    json j = base_json(config, std::nullopt, std::nullopt, std::nullopt);
    j["ray"] = json::array({config.ray.first, config.ray.second});
    j["result"] = checks_json(rep);
    j["pass"] = rep.pass;

    std::ostringstream os;
    os << "fan verify-axes with v=(" << config.ray.first << "," << config.ray.second << ")\n";
    checks_text(os, rep);
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
    return emit(config, j, os.str(), rep.pass);
}

RunResult run_witt_decompose(const RunConfig& config) {
    witt::BigWittShape shape = witt::ptypical_decomposition(config.p, config.witt_m);

    json j = base_json(config, std::nullopt, std::nullopt, std::nullopt);
    j["m"] = config.witt_m;
    json comps = json::array();
    for (auto [jj, sj] : shape.components) comps.push_back(json::array({jj, sj}));
    j["result"] = comps;
    j["pass"] = true;

    std::ostringstream os;
    os << "bW_" << config.witt_m << " over F_" << config.p << " decomposes as\n";
    if (shape.components.empty()) os << "  0\n";
    for (auto [jj, sj] : shape.components)
        os << "  j=" << jj << "  s=" << sj << "  (W_" << sj << ")\n";
    os << "PASS\n";
    return emit(config, j, os.str(), true);
}

RunResult run_perfection(const RunConfig& config) {
    Report rep = toric::perfection_check(config.p, config.denom_bound, config.height_bound);

    json j = base_json(config, std::nullopt, std::nullopt, std::nullopt);
    j["denom_bound"] = config.denom_bound;
    j["height_bound"] = config.height_bound;
    j["result"] = checks_json(rep);
    j["pass"] = rep.pass;

    std::ostringstream os;
    os << "perfection p=" << config.p << " K=" << config.denom_bound << " B="
       << config.height_bound << "\n";
    checks_text(os, rep);
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
    return emit(config, j, os.str(), rep.pass);
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

RunResult failure(const RunConfig& config, int code, const std::string& message) {
    RunResult out;
    out.exit_code = code;
    if (config.format == "json") {
        json j;
        j["command"] = config.command;
        j["error"] = message;
        out.output = j.dump(2) + "\n";
    } else {
        out.output = "error: " + message + "\n";
    }
    return out;
}

}  // namespace

RunResult dispatch(const RunConfig& config) {
    if (!is_prime(config.p))
        return failure(config, kUsage, "p must be prime");
    if (config.e < 1) return failure(config, kUsage, "e must be >= 1");
    if (config.i < 0) return failure(config, kUsage, "i must be >= 0");
    if (config.format != "json" && config.format != "text")
        return failure(config, kUsage, "format must be json or text");
    if (config.precision && *config.precision < 1)
        return failure(config, kUsage, "precision must be >= 1");

    try {
        if (config.command == "syntomic") return run_syntomic(config);
        if (config.command == "logtc") return run_logtc(config);
        if (config.command == "descent") return run_descent(config);
        if (config.command == "nilinv") return run_nilinv(config);
        if (config.command == "axes") return run_axes(config);
        if (config.command == "fan-verify-axes") return run_fan_verify_axes(config);
        if (config.command == "witt-decompose") return run_witt_decompose(config);
        if (config.command == "perfection") return run_perfection(config);
        return failure(config, kUsage, "unknown command " + config.command);
    } catch (const PrecisionError& err) {
        return failure(config, kPrecision, err.message);
    } catch (const StabilizationFailure& err) {
        return failure(config, kPrecision, err.what());
    } catch (const UnexpectedOrbitContribution& err) {
        return failure(config, kMismatch, err.what());
    } catch (const CrossCheckFailure& err) {
        return failure(config, kMismatch, err.what());
    } catch (const std::invalid_argument& err) {
        return failure(config, kUsage, err.what());
    }
}

int run_main(int argc, const char* const* argv) {
    CLI::App app{"exact computations of log syntomic cohomology and logTC for truncated polynomial log points"};
    app.require_subcommand(1);

    RunConfig config;
    std::string range_text;
    std::string ray_text = "-1,1";

    auto add_common = [&](CLI::App* cmd, bool with_e, bool with_i) {
        cmd->add_option("--p", config.p, "prime p")->required();
        if (with_e) cmd->add_option("--e", config.e, "divided-power period e >= 1");
        if (with_i) cmd->add_option("--i", config.i, "syntomic index i >= 0");
        cmd->add_option("--precision", config.precision, "working precision N (default: auto)");
        cmd->add_option("--orbit-bound", config.orbit_bound, "largest orbit index (default: auto)");
        cmd->add_option("--format", config.format, "json | text")->default_str("json");
    };

    CLI::App* syn = app.add_subcommand("syntomic", "compute Z_p^syn(i)(k[x]/x^e, N) and compare with the closed form");
    add_common(syn, true, true);

    CLI::App* tc = app.add_subcommand("logtc", "homotopy table of logTC(k[x]/x^e, N)^p");
    add_common(tc, true, false);
    tc->add_option("--range", range_text, "degree range lo:hi (default -2:9)");

    CLI::App* desc = app.add_subcommand("descent", "rational descent square check");
    add_common(desc, false, true);

    CLI::App* nil = app.add_subcommand("nilinv", "nil-invariance check against the e=1 model");
    add_common(nil, true, true);

    CLI::App* axes = app.add_subcommand("axes", "syntomic cohomology table of the projective coordinate axes");
    add_common(axes, false, true);

    CLI::App* fan = app.add_subcommand("fan", "fan-level verifications");
    CLI::App* fva = fan->add_subcommand("verify-axes", "checklist for the coordinate-axes fan argument");
    fva->add_option("--ray", ray_text, "extra marked ray vx,vy (default -1,1)");
    fva->add_option("--format", config.format, "json | text")->default_str("json");

    CLI::App* wt = app.add_subcommand("witt", "Witt vector utilities");
    CLI::App* wdec = wt->add_subcommand("decompose", "p-typical decomposition of a truncation set");
    wdec->add_option("--p", config.p, "prime p")->required();
    wdec->add_option("--m", config.witt_m, "truncation bound m >= 0")->required();
    wdec->add_option("--format", config.format, "json | text")->default_str("json");

    CLI::App* perf = app.add_subcommand("perfection", "finite check of the two-copy saturated pushout of N[1/p]");
    perf->add_option("--p", config.p, "prime p")->required();
    perf->add_option("--denom-bound", config.denom_bound, "denominator exponent bound K <= 6");
    perf->add_option("--height-bound", config.height_bound, "height bound B <= 50");
    perf->add_option("--format", config.format, "json | text")->default_str("json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (syn->parsed()) config.command = "syntomic";
    if (tc->parsed()) {
        config.command = "logtc";
        if (!range_text.empty()) {
            auto colon = range_text.find(':');
            if (colon == std::string::npos) {
                fprintf(stderr, "error: --range must look like lo:hi\n");
                return kUsage;
            }
            try {
                config.range = {std::stoll(range_text.substr(0, colon)),
                                std::stoll(range_text.substr(colon + 1))};
            } catch (const std::exception&) {
                fprintf(stderr, "error: --range must look like lo:hi\n");
                return kUsage;
            }
            if (config.range->first > config.range->second) {
                fprintf(stderr, "error: --range must be nondecreasing\n");
                return kUsage;
            }
        }
    }
    if (desc->parsed()) config.command = "descent";
    if (nil->parsed()) config.command = "nilinv";
    if (axes->parsed()) config.command = "axes";
    if (fan->parsed() && fva->parsed()) {
        config.command = "fan-verify-axes";
        auto comma = ray_text.find(',');
        if (comma == std::string::npos) {
            fprintf(stderr, "error: --ray must look like vx,vy\n");
            return kUsage;
        }
        try {
            config.ray = {std::stoll(ray_text.substr(0, comma)),
                          std::stoll(ray_text.substr(comma + 1))};
        } catch (const std::exception&) {
            fprintf(stderr, "error: --ray must look like vx,vy\n");
            return kUsage;
        }
    }
    if (wt->parsed() && wdec->parsed()) config.command = "witt-decompose";
    if (perf->parsed()) config.command = "perfection";
    if (config.command.empty()) {
        fprintf(stderr, "error: missing subcommand\n");
        return kUsage;
    }

    RunResult result = dispatch(config);
    fputs(result.output.c_str(), stdout);
    return result.exit_code;
}

}  // namespace logsyn::cli
