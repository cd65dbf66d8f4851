#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kirwan/blowup.hpp"
#include "kirwan/cdga.hpp"
#include "kirwan/errors.hpp"
#include "kirwan/lattice.hpp"
#include "kirwan/torus.hpp"

namespace kirwan {

struct ReductionConfig {
    std::size_t depth_fuse = 8;
    std::size_t variable_cap = default_variable_cap;
    std::size_t degree_cap = default_degree_cap;
    std::uint64_t seed = 0;
};

struct ObstructionReport {
    std::int64_t vdim = 0;
    /// (rank T_{V/G}, rank F); absent when the generic-rank hypotheses fail.
    std::optional<std::pair<std::int64_t, std::int64_t>> e_ranks;
    bool quasi_smooth = false;
    bool dagger = false;
    bool dm = false;
    bool fully_unstable = false;
};

/// One check performed on the edge into a node.
struct InvariantRecord {
    std::string name;
    bool passed = true;
};

struct ReductionNode {
    std::string id;
    std::size_t depth = 0;
    GradedCdga cdga;
    StabilizerReport stabilizer;
    // provenance, empty at the root
    std::string chart_name;
    std::string center;
    std::string parent_id;
    std::optional<SubtorusBasis> branch; // subtorus blown up to reach this node
    bool fully_unstable = false;
    // blow-up data when this node has children
    std::vector<SubtorusBasis> centers;
    std::vector<Ideal> saturation_ideals;
    std::vector<ReductionNode> children;
    std::vector<InvariantRecord> checks;
    std::optional<ObstructionReport> leaf_report;

    bool is_leaf() const noexcept { return children.empty(); }
};

/// Quasi-smooth at presentation level: no degree-2 generators.
inline bool quasi_smooth_check(const GradedCdga& x) { return x.gens2.empty(); }

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Per-node random stream, derived from the run seed and the node id.
inline std::uint64_t node_seed(std::uint64_t seed, std::string_view id) { return seed ^ fnv1a64(id); }

namespace detail {

// Rank of the degree-2 differential matrix at a random point off V(excluded).
inline std::size_t delta2_rank_at_random_point(const GradedCdga& x, std::mt19937_64& rng) {
    const std::size_t n = x.nvars();
    std::uniform_int_distribution<long> num(-29, 29), den(1, 7);
    std::vector<Rational> point(n);
    for (int attempt = 0;; ++attempt) {
        if (attempt == 64)
            throw RankUndetermined("obstruction_report: no random point avoids the excluded locus");
        for (auto& p : point) {
            long a = 0;
            while (a == 0)
                a = num(rng);
            p = Rational(a, den(rng));
            p.canonicalize();
        }
        bool off = false;
        for (const Polynomial& g : x.excluded.generators())
            off = off || g.evaluate(point) != 0;
        if (off)
            break;
    }
    RationalMatrix m;
    for (const Gen2& y : x.gens2) {
        std::vector<Rational> row(x.gens1.size(), Rational(0));
        for (const auto& [target, coef] : y.differential)
            row[*x.gen1_index(target)] = coef.evaluate(point);
        m.push_back(std::move(row));
    }
    return matrix_rank(std::move(m));
}

} // namespace detail

/// Virtual dimension, obstruction-theory ranks and structural flags of a leaf.
inline ObstructionReport obstruction_report(const GradedCdga& leaf, const StabilizerReport& stab,
                                            std::uint64_t seed) {
    ObstructionReport r;
    r.vdim = tangent_complex_ranks(leaf).vdim;
    r.quasi_smooth = quasi_smooth_check(leaf);
    r.dagger = dagger_check(leaf, SubtorusBasis::full(leaf.torus_rank));
    r.dm = stab.max_dim == 0;
    r.fully_unstable = stab.semistable_empty;
    if (!r.dagger || r.fully_unstable)
        return r;

    std::mt19937_64 rng(seed);
    std::size_t rank = 0;
    if (!leaf.gens2.empty() && !leaf.gens1.empty()) {
        const std::size_t a = detail::delta2_rank_at_random_point(leaf, rng);
        const std::size_t b = detail::delta2_rank_at_random_point(leaf, rng);
        const std::size_t c = detail::delta2_rank_at_random_point(leaf, rng);
        if (a == b || a == c)
            rank = a;
        else if (b == c)
            rank = b;
        else
            throw RankUndetermined("obstruction_report: three random evaluations of the degree-2 "
                                   "differential disagree on its rank");
    }
    const auto s = [](std::size_t v) { return static_cast<std::int64_t>(v); };
    r.e_ranks = std::pair{s(leaf.nvars()) - s(leaf.torus_rank), s(leaf.gens1.size()) - s(rank)};
    return r;
}

inline ObstructionReport obstruction_report(const GradedCdga& leaf, std::uint64_t seed = 0) {
    return obstruction_report(leaf, stabilizer_stratification(leaf), seed);
}

namespace detail {

inline void record(ReductionNode& node, std::string name, bool passed) {
    node.checks.push_back({name, passed});
    if (!passed)
        throw InvariantBreach("invariant '" + name + "' failed on the edge into " + node.id);
}

inline ReductionNode reduce_node(GradedCdga x, std::string id, std::size_t depth, const ReductionConfig& cfg,
                                 std::optional<std::size_t> parent_max_dim = std::nullopt) {
    ReductionNode node;
    node.id = std::move(id);
    node.depth = depth;
    node.cdga = std::move(x);
    node.stabilizer = stabilizer_stratification(node.cdga, cfg.variable_cap);
    if (parent_max_dim && node.stabilizer.max_dim >= *parent_max_dim)
        throw InvariantBreach("invariant 'max_dim strictly decreases' failed on the edge into " + node.id);
    if (node.stabilizer.max_dim == 0) {
        node.leaf_report = obstruction_report(node.cdga, node.stabilizer, node_seed(cfg.seed, node.id));
        return node;
    }
    if (depth >= cfg.depth_fuse)
        throw DepthExceeded("stabilizer reduction exceeded the depth fuse of " + std::to_string(cfg.depth_fuse) +
                            " at " + node.id);

    const GradedCdga& parent = node.cdga;
    const bool branching = node.stabilizer.maximal_subtori.size() > 1;
    for (const SubtorusBasis& h : node.stabilizer.maximal_subtori) {
        Ideal j = saturation_ideal(parent, h, cfg.degree_cap);
        node.centers.push_back(h);
        node.saturation_ideals.push_back(j);
        const bool parent_dagger = dagger_check(parent, h);
        const bool parent_qs = quasi_smooth_check(parent);
        for (Chart& c : kirwan_charts(parent, h, j)) {
            std::string child_id = node.id + "/" + c.name + (branching ? "@" + h.to_string() : "");
            // edge checks that do not need the child's own stratification run first
            std::vector<InvariantRecord> edge{
                {"chart validates", validate_presentation(c.cdga).ok()},
                {"truncation crosscheck", crosscheck_truncation(c, parent, h)},
            };
            if (parent_qs)
                edge.push_back({"quasi-smoothness preserved", quasi_smooth_check(c.cdga)});
            if (parent_dagger)
                edge.push_back({"dagger preserved", dagger_check(c.cdga, h)});
            for (const InvariantRecord& r : edge)
                if (!r.passed)
                    throw InvariantBreach("invariant '" + r.name + "' failed on the edge into " + child_id);

            ReductionNode child;
            if (c.fully_unstable) {
                child.id = child_id;
                child.depth = depth + 1;
                child.cdga = c.cdga;
                child.stabilizer = stabilizer_stratification(child.cdga, cfg.variable_cap);
                child.fully_unstable = true;
                child.leaf_report = obstruction_report(child.cdga, child.stabilizer, node_seed(cfg.seed, child_id));
                child.leaf_report->fully_unstable = true;
            } else {
                child = reduce_node(c.cdga, child_id, depth + 1, cfg, node.stabilizer.max_dim);
            }
            child.chart_name = c.name;
            child.center = c.center;
            child.parent_id = node.id;
            child.branch = h;
            child.checks = std::move(edge);
            record(child, "max_dim strictly decreases", child.stabilizer.max_dim < node.stabilizer.max_dim);
            node.children.push_back(std::move(child));
        }
    }
    std::stable_sort(node.children.begin(), node.children.end(),
                     [](const ReductionNode& a, const ReductionNode& b) { return a.id < b.id; });
    return node;
}

} // namespace detail

/// Iterated Kirwan blow-up until every stabilizer on the semistable locus is finite.
inline ReductionNode stabilizer_reduce(const GradedCdga& x, const ReductionConfig& cfg = {}) {
    require_valid(x);
    return detail::reduce_node(x, "root", 0, cfg);
}

inline void collect_leaves(const ReductionNode& node, std::vector<const ReductionNode*>& out) {
    if (node.is_leaf())
        out.push_back(&node);
    for (const ReductionNode& c : node.children)
        collect_leaves(c, out);
}

inline std::vector<const ReductionNode*> leaves(const ReductionNode& root) {
    std::vector<const ReductionNode*> out;
    collect_leaves(root, out);
    return out;
}

inline std::size_t tree_depth(const ReductionNode& node) {
    std::size_t d = 0;
    for (const ReductionNode& c : node.children)
        d = std::max(d, 1 + tree_depth(c));
    return d;
}

} // namespace kirwan
