// Run configuration: JSON file and/or CLI flags.  Unknown keys are rejected
// so that typos fail loudly in CI.
#ifndef SNOWCONE_CONFIG_HPP
#define SNOWCONE_CONFIG_HPP

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "snowcone/certify.hpp"
#include "snowcone/twist_chain.hpp"

namespace snowcone {

struct RunConfig {
    std::vector<long long> chain_ks = {2, 3};
    std::vector<double> epsilons = {0.5};
    double delta1 = 0.01;
    X4Constants x4{};
    double certify_tol = 0.0;   // margin for "Ric >= 0" claims
    int certify_max_depth = 40;
    std::uint64_t seed = 20240817;
    std::string out_dir;

    CertifyOptions certify_options() const {
        CertifyOptions o;
        o.margin = certify_tol;
        o.max_depth = certify_max_depth;
        return o;
    }
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}
}  // namespace detail

inline void validate(const RunConfig& c) {
    if (c.chain_ks.empty()) throw ConfigError("config: chain.ks must be nonempty");
    for (long long k : c.chain_ks)
        if (k < 2) throw ConfigError("config: chain entries must be >= 2");
    for (double e : c.epsilons)
        if (!(e > 0 && e < 1)) throw ConfigError("config: epsilons must lie in (0,1)");
    if (!(c.delta1 > 0)) throw ConfigError("config: delta1 must be positive");
    if (c.certify_max_depth < 1 || c.certify_max_depth > 60)
        throw ConfigError("config: certify.max_depth out of range");
    if (c.certify_tol < 0) throw ConfigError("config: certify.tol must be >= 0");
}

inline RunConfig parse_config_json(const nlohmann::json& j) {
    RunConfig c;
    detail::reject_unknown(j, {"chain", "epsilons", "delta1", "x4", "certify", "seed", "out"},
                           "top level");
    if (j.contains("chain")) {
        detail::reject_unknown(j["chain"], {"ks"}, "chain");
        if (j["chain"].contains("ks")) c.chain_ks = j["chain"]["ks"].get<std::vector<long long>>();
    }
    if (j.contains("epsilons")) c.epsilons = j["epsilons"].get<std::vector<double>>();
    if (j.contains("delta1")) c.delta1 = j["delta1"].get<double>();
    if (j.contains("x4")) {
        detail::reject_unknown(j["x4"], {"M", "c0"}, "x4");
        if (j["x4"].contains("M")) c.x4.M = j["x4"]["M"].get<double>();
        if (j["x4"].contains("c0")) c.x4.c0 = j["x4"]["c0"].get<double>();
    }
    if (j.contains("certify")) {
        detail::reject_unknown(j["certify"], {"tol", "max_depth"}, "certify");
        if (j["certify"].contains("tol")) c.certify_tol = j["certify"]["tol"].get<double>();
        if (j["certify"].contains("max_depth"))
            c.certify_max_depth = j["certify"]["max_depth"].get<int>();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    validate(c);
    return c;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: bad JSON: ") + e.what());
    }
    return parse_config_json(j);
}

// Comma-separated integer list, e.g. "2,3,4".
inline std::vector<long long> parse_ks(const std::string& text) {
    std::vector<long long> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw ConfigError("bad --ks list: empty entry");
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(cur, &pos);
        } catch (...) {
            throw ConfigError("bad --ks entry: '" + cur + "'");
        }
        if (pos != cur.size()) throw ConfigError("bad --ks entry: '" + cur + "'");
        if (v < 2) throw ConfigError("--ks entries must be >= 2");
        out.push_back(v);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    return out;
}

}  // namespace snowcone

#endif
