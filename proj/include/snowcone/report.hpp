// JSON report assembly, CSV profile samples, and graph exports.
// Reports are schema-stable and byte-deterministic for a fixed config and
// seed; wall-clock timings live under the single "timing" key so golden
// comparisons can strip them.
#ifndef SNOWCONE_REPORT_HPP
#define SNOWCONE_REPORT_HPP

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "snowcone/base_model.hpp"
#include "snowcone/snowflake.hpp"
#include "snowcone/stage.hpp"
#include "snowcone/twist_chain.hpp"

namespace snowcone {

using Json = nlohmann::ordered_json;

// Fixed 17-significant-digit decimal formatting: round-trips doubles and
// keeps CSV/JSON reproducible across runs.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline Json tower_json(const TowerReal& t) {
    Json j;
    j["repr"] = t.str();
    j["exp_level"] = t.level();
    j["mantissa"] = t.mantissa();
    double v = t.to_double();
    if (std::isfinite(v)) j["value"] = v;
    return j;
}

inline Json interval_json(const Interval& iv) { return Json{{"lo", iv.lo}, {"hi", iv.hi}}; }

inline Json cert_json(const CertStatement& c) {
    Json j;
    j["name"] = c.name;
    j["detail"] = c.detail;
    j["status"] = c.result.status_str();
    j["conditional"] = c.conditional;
    if (c.arithmetic) {
        j["kind"] = "arithmetic";
        j["value"] = interval_json(c.value);
    } else {
        j["kind"] = "interval-bisection";
        j["nodes"] = c.result.nodes;
        j["max_depth"] = c.result.max_depth_reached;
    }
    if (c.result.witness) {
        j["witness"] = Json{{"r", c.result.witness->r}, {"value", c.result.witness->value}};
    }
    return j;
}

inline Json stage_json(const StageOutcome& s) {
    Json j;
    j["stage"] = s.name;
    j["coordinate"] = s.coordinate_note;
    j["anchor"] = tower_json(s.anchor);
    j["domain"] = interval_json(s.local_domain);
    j["certified"] = s.all_certified();
    j["conditional"] = s.conditional();
    Json cs = Json::array();
    for (const CertStatement& c : s.certs) cs.push_back(cert_json(c));
    j["certificates"] = cs;
    Json nums;
    for (const auto& [k, v] : s.numbers) nums[k] = v;
    j["numbers"] = nums;
    if (!s.big_numbers.empty()) {
        Json bigs;
        for (const auto& [k, v] : s.big_numbers) bigs[k] = tower_json(v);
        j["large_numbers"] = bigs;
    }
    if (!s.notes.empty()) j["notes"] = s.notes;
    return j;
}

inline Json base_model_json(const BaseModelResult& b) {
    Json j;
    j["kind"] = "base-model";
    j["eps"] = b.eps;
    j["ln_delta"] = b.ln_delta;
    j["isometric_tail_radius"] = b.isometric_tail_radius;
    j["stage"] = stage_json(b.stage);
    return j;
}

inline Json step2_json(const Step2Result& r) {
    Json j;
    j["kind"] = "twist-chain";
    j["certified"] = r.all_certified();
    j["conditional"] = r.conditional();
    Json st = Json::array();
    for (const StageOutcome& s : r.stages) st.push_back(stage_json(s));
    j["stages"] = st;
    Json c;
    c["R1"] = r.R1;
    c["R2"] = r.R2;
    c["c2"] = r.c2;
    c["R3"] = r.R3;
    c["alpha"] = r.alpha;
    c["G"] = r.G;
    c["Lambda"] = r.Lambda;
    c["R4"] = tower_json(r.R4);
    c["R5"] = tower_json(r.R5);
    c["R6"] = tower_json(r.R6);
    c["R7"] = tower_json(r.R7);
    c["c5"] = tower_json(r.c5);
    c["delta_hat"] = tower_json(r.delta_hat_constr);
    c["ln_R5_over_R4"] = r.ln_R5_over_R4;
    c["ln_R6_over_R4"] = r.ln_R6_over_R4;
    c["ln_R7_over_R4"] = r.ln_R7_over_R4;
    j["constants"] = c;
    j["R"] = tower_json(r.R_prop);
    j["delta_hat_out"] = tower_json(r.delta_hat_prop);
    j["ln_delta_hat_out"] = r.ln_delta_hat_prop;
    Json notes = Json::array();
    for (const std::string& n : r.notes) notes.push_back(n);
    j["notes"] = notes;
    return j;
}

// CSV samples (r, f, f', f'', h, h', h'') of a stage's local profiles.
inline void write_profile_csv(std::ostream& os, const WarpProfile* f, double ln_f_scale,
                              const WarpProfile* h, const Interval& domain, int n = 512) {
    os << "# columns: r,f,df,ddf,h,dh,ddh (stage-local coordinates; f scaled by exp("
       << fmt17(ln_f_scale) << "))\n";
    os << "r,f,df,ddf,h,dh,ddh\n";
    for (int i = 0; i <= n; ++i) {
        double r = domain.lo + (domain.hi - domain.lo) * i / n;
        Jet jf = f ? f->jet(r) : Jet{};
        Jet jh = h ? h->jet(r) : Jet{};
        os << fmt17(r) << "," << fmt17(jf.f) << "," << fmt17(jf.df) << "," << fmt17(jf.ddf) << ","
           << fmt17(jh.f) << "," << fmt17(jh.df) << "," << fmt17(jh.ddf) << "\n";
    }
}

// ---------------------------------------------------------------------------
// Graph exports

inline Json graph_json(const GeneratorChain& chain, int max_level = -1) {
    Json j;
    Json ks = Json::array();
    for (const BigInt& k : chain.ks()) ks.push_back(k.str());
    j["chain"] = ks;
    int top = max_level < 0 ? chain.top_level() : std::min(max_level, chain.top_level());
    Json levels = Json::array();
    for (int lev = 0; lev <= top; ++lev) {
        Json L;
        L["level"] = lev;
        Json verts = Json::array();
        for (const VertexId& v : level_slice(chain, lev)) {
            Json vj;
            vj["id"] = v.str();
            if (lev < chain.top_level()) vj["edge_to"] = edge_map(v, chain).str();
            verts.push_back(vj);
        }
        L["vertices"] = verts;
        levels.push_back(L);
    }
    j["levels"] = levels;
    return j;
}

inline std::string graph_dot(const GeneratorChain& chain) {
    std::string s = "digraph snowflake {\n  rankdir=BT;\n";
    for (int lev = 0; lev <= chain.top_level(); ++lev) {
        for (const VertexId& v : level_slice(chain, lev)) {
            s += "  \"" + v.str() + "\";\n";
            if (lev < chain.top_level())
                s += "  \"" + v.str() + "\" -> \"" + edge_map(v, chain).str() + "\";\n";
        }
    }
    s += "}\n";
    return s;
}

inline Json cones_json(const ConeEnumeration& e) {
    Json j;
    Json prefix = Json::array();
    for (long long k : e.prefix) prefix.push_back(k);
    j["prefix"] = prefix;
    Json rec;
    for (const auto& [k, n] : e.recurrence) rec[std::to_string(k)] = n;
    j["recurrence"] = rec;
    j["every_k_recurs_twice"] = e.every_k_recurs_twice;
    j["unbounded_policy"] = e.unbounded_policy;
    Json desc = Json::array();
    for (const ConeDescriptor& d : e.realized) desc.push_back(d.str());
    j["realized"] = desc;
    return j;
}

}  // namespace snowcone

#endif
