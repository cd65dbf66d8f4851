#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "kirwan/blowup.hpp"
#include "kirwan/reduction.hpp"
#include "kirwan/scene.hpp"
#include "kirwan/torus.hpp"

namespace kirwan {

inline constexpr const char* tool_name = "kirwan";
inline constexpr const char* tool_version = "0.1.0";

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string input_digest(std::string_view bytes) { return "fnv1a64:" + hex64(fnv1a64(bytes)); }

inline MonomialOrder same_kind(const MonomialOrder& order, std::size_t nvars) {
    return order.kind() == OrderKind::Lex ? MonomialOrder::lex(nvars) : MonomialOrder::grevlex(nvars);
}

inline Json strings_json(const std::vector<Polynomial>& ps, const std::vector<std::string>& names,
                         const MonomialOrder& order) {
    Json a = Json::array();
    for (const Polynomial& p : ps)
        a.push_back(p.to_string(names, order));
    return a;
}

/// Reduced Gröbner basis under `order`: a canonical generating set.
inline Json canonical_json(const Ideal& id, const std::vector<std::string>& names, const MonomialOrder& order) {
    return strings_json(id.basis(order), names, order);
}

inline Json cdga_json(const GradedCdga& x, const MonomialOrder& kind) {
    const auto names = x.ring_names();
    const MonomialOrder order = same_kind(kind, x.nvars());
    Json j;
    j["torus_rank"] = x.torus_rank;
    j["ring"] = Json::array();
    for (const auto& v : x.ring_vars)
        j["ring"].push_back({{"name", v.name}, {"weight", weight_to_json(v.weight)}});
    j["gens1"] = Json::array();
    for (const auto& g : x.gens1)
        j["gens1"].push_back({{"name", g.var.name},
                              {"weight", weight_to_json(g.var.weight)},
                              {"differential", g.differential.to_string(names, order)}});
    j["gens2"] = Json::array();
    for (const auto& y : x.gens2) {
        Json d = Json::object();
        for (const auto& [target, coef] : y.differential)
            d[target] = coef.to_string(names, order);
        j["gens2"].push_back({{"name", y.var.name}, {"weight", weight_to_json(y.var.weight)}, {"differential", d}});
    }
    j["truncation"] = canonical_json(classical_truncation(x), names, order);
    j["excluded"] = strings_json(x.excluded.generators(), names, order);
    return j;
}

inline Json subtorus_json(const SubtorusBasis& h) {
    Json a = Json::array();
    for (const IntVector& v : h.basis()) {
        Json row = Json::array();
        for (std::int64_t c : v)
            row.push_back(c);
        a.push_back(row);
    }
    return a;
}

inline Json stabilizer_json(const StabilizerReport& rep, const GradedCdga& x) {
    Json j;
    j["max_dim"] = rep.max_dim;
    j["semistable_empty"] = rep.semistable_empty;
    j["maximal_subtori"] = Json::array();
    for (const SubtorusBasis& h : rep.maximal_subtori)
        j["maximal_subtori"].push_back(subtorus_json(h));
    j["strata"] = Json::array();
    for (const Stratum& s : rep.strata) {
        Json support = Json::array();
        for (std::size_t i : s.support)
            support.push_back(x.ring_vars[i].name);
        j["strata"].push_back({{"support", support}, {"stabilizer_dim", s.stabilizer_dim}, {"nonempty", s.nonempty}});
    }
    return j;
}

inline Json obstruction_json(const ObstructionReport& r) {
    Json j;
    j["vdim"] = r.vdim;
    if (r.e_ranks)
        j["e_ranks"] = Json::array({r.e_ranks->first, r.e_ranks->second});
    else
        j["e_ranks"] = nullptr;
    j["quasi_smooth"] = r.quasi_smooth;
    j["dagger"] = r.dagger;
    j["dm"] = r.dm;
    j["fully_unstable"] = r.fully_unstable;
    return j;
}

inline Json chart_json(const Chart& c, const MonomialOrder& kind) {
    Json j;
    j["name"] = c.name;
    j["center"] = c.center;
    j["exceptional"] = {{"name", c.exceptional().name}, {"weight", weight_to_json(c.exceptional().weight)}};
    j["fully_unstable"] = c.fully_unstable;
    j["cdga"] = cdga_json(c.cdga, kind);
    return j;
}

inline Json rees_json(const ReesPresentation& r, const MonomialOrder& kind) {
    const MonomialOrder order = same_kind(kind, r.nvars());
    Json j;
    j["subtorus"] = subtorus_json(r.subtorus);
    j["variables"] = Json::array();
    for (std::size_t i = 0; i < r.nvars(); ++i)
        j["variables"].push_back({{"name", r.names[i]}, {"homogeneous_degree", r.homogeneous_degree[i]}});
    j["relations"] = Json::array();
    for (const ReesRelation& rel : r.relations)
        j["relations"].push_back({{"label", rel.label},
                                  {"homological_degree", rel.homological_degree},
                                  {"homogeneous_degree", rel.homogeneous_degree},
                                  {"relation", rel.relation.to_string(r.names, order)}});
    const auto base_names = r.base.ring_names();
    const MonomialOrder base_order = same_kind(kind, r.base.nvars());
    j["fixed_gens1"] = Json::array();
    for (const Gen1& g : r.fixed_gens1)
        j["fixed_gens1"].push_back({{"name", g.var.name}, {"differential", g.differential.to_string(base_names, base_order)}});
    j["fixed_gens2"] = Json::array();
    for (const Gen2& y : r.fixed_gens2)
        j["fixed_gens2"].push_back(y.var.name);
    return j;
}

namespace detail {

inline void node_records(const ReductionNode& n, const MonomialOrder& kind, Json& out) {
    Json j;
    j["id"] = n.id;
    j["depth"] = n.depth;
    if (!n.parent_id.empty()) {
        j["parent"] = n.parent_id;
        j["chart"] = n.chart_name;
        j["center"] = n.center;
        j["branch"] = subtorus_json(*n.branch);
    }
    j["fully_unstable"] = n.fully_unstable;
    j["cdga"] = cdga_json(n.cdga, kind);
    j["stabilizer"] = stabilizer_json(n.stabilizer, n.cdga);
    j["blowups"] = Json::array();
    for (std::size_t i = 0; i < n.centers.size(); ++i)
        j["blowups"].push_back({{"subtorus", subtorus_json(n.centers[i])},
                                {"saturation", strings_json(n.saturation_ideals[i].generators(), n.cdga.ring_names(),
                                                            same_kind(kind, n.cdga.nvars()))}});
    j["children"] = Json::array();
    for (const ReductionNode& c : n.children)
        j["children"].push_back(c.id);
    j["leaf"] = n.leaf_report ? obstruction_json(*n.leaf_report) : Json(nullptr);
    j["checks"] = Json::array();
    for (const InvariantRecord& r : n.checks)
        j["checks"].push_back({{"name", r.name}, {"passed", r.passed}});
    out.push_back(std::move(j));
    for (const ReductionNode& c : n.children)
        node_records(c, kind, out);
}

inline void count(const ReductionNode& n, std::size_t& blowups, std::size_t& dm, std::size_t& unstable) {
    blowups += n.centers.size();
    if (n.is_leaf()) {
        if (n.fully_unstable)
            ++unstable;
        else if (n.leaf_report && n.leaf_report->dm)
            ++dm;
    }
    for (const ReductionNode& c : n.children)
        count(c, blowups, dm, unstable);
}

} // namespace detail

struct TreeSummary {
    std::size_t blowups = 0;
    std::size_t dm_charts = 0;
    std::size_t fully_unstable_charts = 0;
    std::size_t depth = 0;
    bool semistable_empty() const { return dm_charts == 0; }
};

inline TreeSummary summarize(const ReductionNode& root) {
    TreeSummary s;
    detail::count(root, s.blowups, s.dm_charts, s.fully_unstable_charts);
    s.depth = tree_depth(root);
    return s;
}

/// The report document: the whole reduction tree, one record per node in
/// depth-first order, plus a summary and every edge check.
inline Json report_document(const ReductionNode& root, std::string_view scene_bytes, const MonomialOrder& kind,
                            const ReductionConfig& cfg) {
    Json doc;
    doc["tool"] = tool_name;
    doc["version"] = tool_version;
    doc["input_digest"] = input_digest(scene_bytes);
    doc["config"] = {{"order", kind.kind() == OrderKind::Lex ? "lex" : "grevlex"},
                     {"depth_fuse", cfg.depth_fuse},
                     {"degree_cap", cfg.degree_cap},
                     {"seed", cfg.seed}};
    const TreeSummary s = summarize(root);
    doc["summary"] = {{"blowups", s.blowups},
                      {"depth", s.depth},
                      {"dm_charts", s.dm_charts},
                      {"fully_unstable_charts", s.fully_unstable_charts},
                      {"semistable_empty", s.semistable_empty()}};
    doc["nodes"] = Json::array();
    detail::node_records(root, kind, doc["nodes"]);
    Json checks = Json::array();
    std::size_t failed = 0;
    for (const Json& n : doc["nodes"])
        for (const Json& c : n["checks"]) {
            checks.push_back({{"node", n["id"]}, {"name", c["name"]}, {"passed", c["passed"]}});
            failed += c["passed"].get<bool>() ? 0 : 1;
        }
    doc["invariants"] = {{"checked", checks.size()}, {"failed", failed}, {"records", checks}};
    return doc;
}

} // namespace kirwan
