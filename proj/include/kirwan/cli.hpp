#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kirwan/blowup.hpp"
#include "kirwan/reduction.hpp"
#include "kirwan/report.hpp"
#include "kirwan/scene.hpp"
#include "kirwan/torus.hpp"

namespace kirwan {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 1;
inline constexpr int usage = 2;
inline constexpr int breach = 3;
} // namespace exit_code

/// Raised for malformed command-line values that CLI11 cannot see.
class UsageError : public Error {
public:
    using Error::Error;
};

namespace cli_detail {

struct Flags {
    std::string scene;
    std::string subtorus;
    std::string order;
    std::string chart;
    std::string json;
    std::size_t degree_cap = 0;
    std::size_t depth_fuse = 0;
    std::uint64_t seed = 0;
    bool has_degree_cap = false;
    bool has_depth_fuse = false;
    bool has_seed = false;
};

class Painter {
public:
    explicit Painter(bool color) : color_(color) {}
    std::string bold(const std::string& s) const { return wrap("1", s); }
    std::string good(const std::string& s) const { return wrap("32", s); }
    std::string bad(const std::string& s) const { return wrap("31", s); }
    std::string dim(const std::string& s) const { return wrap("2", s); }

private:
    std::string wrap(const char* code, const std::string& s) const {
        return color_ ? "\x1b[" + std::string(code) + "m" + s + "\x1b[0m" : s;
    }
    bool color_;
};

inline SubtorusBasis parse_subtorus(const std::string& text, std::size_t k) {
    std::vector<IntVector> rows;
    std::stringstream rows_in(text);
    std::string row;
    while (std::getline(rows_in, row, ';')) {
        IntVector v;
        std::stringstream cols(row);
        std::string cell;
        while (std::getline(cols, cell, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoll(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos)
                    throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw UsageError("--subtorus: '" + cell + "' is not an integer");
            }
        }
        if (v.size() != k)
            throw UsageError("--subtorus: vector '" + row + "' has length " + std::to_string(v.size()) +
                             " but torus_rank is " + std::to_string(k));
        rows.push_back(std::move(v));
    }
    try {
        return SubtorusBasis(k, std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--subtorus: ") + e.what());
    }
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? sep : "") + parts[i];
    return s;
}

inline std::vector<std::string> json_strings(const Json& a) {
    std::vector<std::string> out;
    for (const Json& e : a)
        out.push_back(e.get<std::string>());
    return out;
}

inline std::string ideal_text(const Json& gens) {
    return gens.empty() ? "(0)" : "(" + join(json_strings(gens), ", ") + ")";
}

inline void print_cdga(std::ostream& out, const Json& c, const std::string& indent) {
    std::vector<std::string> ring;
    for (const Json& v : c["ring"])
        ring.push_back(v["name"].get<std::string>() + v["weight"].dump());
    out << indent << "ring: " << (ring.empty() ? "(none)" : join(ring, " ")) << "\n";
    for (const Json& g : c["gens1"])
        out << indent << "d(" << g["name"].get<std::string>() << ") = " << g["differential"].get<std::string>()
            << "  weight " << g["weight"].dump() << "\n";
    for (const Json& y : c["gens2"]) {
        std::vector<std::string> terms;
        for (const auto& [target, coef] : y["differential"].items())
            terms.push_back("(" + coef.get<std::string>() + ")*" + target);
        out << indent << "d(" << y["name"].get<std::string>() << ") = " << (terms.empty() ? "0" : join(terms, " + "))
            << "  weight " << y["weight"].dump() << "\n";
    }
    out << indent << "truncation: " << ideal_text(c["truncation"]) << "\n";
    out << indent << "excluded: V" << ideal_text(c["excluded"]) << "\n";
}

struct Context {
    Flags flags;
    std::ostream& out;
    std::ostream& err;
    Painter paint;
    std::string bytes;
    Scene scene;
    std::ostringstream sink;

    MonomialOrder order() const {
        const std::string name = !flags.order.empty() ? flags.order : scene.options.order.value_or("grevlex");
        return order_from_name(name, scene.cdga.nvars());
    }

    ReductionConfig config() const {
        ReductionConfig cfg;
        cfg.depth_fuse = flags.has_depth_fuse ? flags.depth_fuse : scene.options.depth_fuse.value_or(cfg.depth_fuse);
        cfg.degree_cap = flags.has_degree_cap ? flags.degree_cap : scene.options.degree_cap.value_or(cfg.degree_cap);
        cfg.seed = flags.has_seed ? flags.seed : scene.options.seed.value_or(cfg.seed);
        return cfg;
    }

    SubtorusBasis subtorus() {
        if (!flags.subtorus.empty())
            return parse_subtorus(flags.subtorus, scene.cdga.torus_rank);
        StabilizerReport rep = stabilizer_stratification(scene.cdga);
        if (rep.max_dim == 0)
            throw NoPositiveDimensionalStabilizer("no positive-dimensional stabilizer on the semistable locus; "
                                                  "pass --subtorus to choose one");
        if (rep.maximal_subtori.size() > 1)
            err << paint.dim("note: " + std::to_string(rep.maximal_subtori.size()) +
                             " maximal subtori; using " + rep.maximal_subtorus.to_string()) << "\n";
        return rep.maximal_subtorus;
    }

    bool json_to_stdout() const { return flags.json == "-"; }

    // Human text goes to stdout unless the JSON document does.
    std::ostream& text() { return json_to_stdout() ? sink : out; }

    void emit(const Json& doc) {
        if (flags.json.empty())
            return;
        if (json_to_stdout()) {
            out << doc.dump(2) << "\n";
            return;
        }
        std::ofstream f(flags.json, std::ios::binary);
        if (!f)
            throw IoError("cannot write '" + flags.json + "'");
        f << doc.dump(2) << "\n";
        if (!f)
            throw IoError("error writing '" + flags.json + "'");
    }
};

inline Json envelope(const Context& c, const std::string& command) {
    Json doc;
    doc["tool"] = tool_name;
    doc["version"] = tool_version;
    doc["command"] = command;
    doc["input_digest"] = input_digest(c.bytes);
    return doc;
}

inline int cmd_validate(Context& c) {
    c.scene = parse_scene_text(c.bytes);
    ValidationReport rep = validate_presentation(c.scene.cdga);
    Json doc = envelope(c, "validate");
    doc["valid"] = rep.ok();
    doc["violations"] = rep.violations;
    std::ostream& t = c.text();
    const GradedCdga& x = c.scene.cdga;
    if (rep.ok()) {
        t << c.paint.good("valid") << ": " << x.nvars() << " ring variables, " << x.gens1.size()
          << " degree-1 and " << x.gens2.size() << " degree-2 generators, torus rank " << x.torus_rank << "\n";
    } else {
        t << c.paint.bad("invalid") << ": " << rep.violations.size() << " violation(s)\n";
        for (const std::string& v : rep.violations)
            t << "  - " << v << "\n";
    }
    c.emit(doc);
    return rep.ok() ? exit_code::ok : exit_code::validation;
}

inline int cmd_pi0(Context& c) {
    const GradedCdga& x = c.scene.cdga;
    const MonomialOrder order = c.order();
    Json doc = envelope(c, "pi0");
    doc["ring"] = x.ring_names();
    doc["generators"] = canonical_json(classical_truncation(x), x.ring_names(), order);
    std::ostream& t = c.text();
    t << c.paint.bold("classical truncation") << " (reduced basis, "
      << (order.kind() == OrderKind::Lex ? "lex" : "grevlex") << "):\n";
    if (doc["generators"].empty())
        t << "  (zero ideal)\n";
    for (const Json& g : doc["generators"])
        t << "  " << g.get<std::string>() << "\n";
    c.emit(doc);
    return exit_code::ok;
}

inline int cmd_fixed_locus(Context& c) {
    SubtorusBasis h = c.subtorus();
    GradedCdga f = fixed_locus(c.scene.cdga, h);
    Json doc = envelope(c, "fixed-locus");
    doc["subtorus"] = subtorus_json(h);
    doc["fixed_locus"] = cdga_json(f, c.order());
    std::ostream& t = c.text();
    t << c.paint.bold("fixed locus") << " of subtorus " << h.to_string() << ":\n";
    print_cdga(t, doc["fixed_locus"], "  ");
    c.emit(doc);
    return exit_code::ok;
}

// Blowing up along a subtorus that moves nothing is a property of the scene, not of the flags.
inline SubtorusBasis center_subtorus(Context& c) {
    SubtorusBasis h = c.subtorus();
    if (moving_ring_indices(c.scene.cdga, h).empty())
        throw Error("subtorus " + h.to_string() + " moves no ring variable; the blow-up center is everything");
    return h;
}

inline int cmd_rees(Context& c) {
    SubtorusBasis h = center_subtorus(c);
    ReesPresentation r = rees_presentation(c.scene.cdga, h, c.order());
    Json doc = envelope(c, "rees");
    doc["rees"] = rees_json(r, c.order());
    std::ostream& t = c.text();
    t << c.paint.bold("extended Rees presentation") << " along subtorus " << h.to_string() << ":\n";
    std::vector<std::string> vars;
    for (const Json& v : doc["rees"]["variables"])
        vars.push_back(v["name"].get<std::string>() + "<" + std::to_string(v["homogeneous_degree"].get<int>()) + ">");
    t << "  variables: " << join(vars, " ") << "\n";
    for (const Json& rel : doc["rees"]["relations"])
        t << "  (" << rel["homological_degree"].get<int>() << "," << rel["homogeneous_degree"].get<int>() << ") "
          << rel["relation"].get<std::string>() << "  " << c.paint.dim(rel["label"].get<std::string>()) << "\n";
    for (const Json& g : doc["rees"]["fixed_gens1"])
        t << "  fixed d(" << g["name"].get<std::string>() << ") = " << g["differential"].get<std::string>() << "\n";
    for (const Json& g : doc["rees"]["fixed_gens2"])
        t << "  fixed degree-2 generator " << g.get<std::string>() << "\n";
    c.emit(doc);
    return exit_code::ok;
}

inline std::vector<Chart> select_charts(std::vector<Chart> charts, const std::string& name) {
    if (name.empty())
        return charts;
    std::vector<Chart> out;
    for (Chart& ch : charts)
        if (ch.name == name)
            out.push_back(std::move(ch));
    if (out.empty()) {
        std::vector<std::string> names;
        for (const Chart& ch : charts)
            names.push_back(ch.name);
        throw UsageError("--chart: no chart named '" + name + "' (available: " + join(names, ", ") + ")");
    }
    return out;
}

inline int cmd_charts(Context& c, bool kirwan) {
    SubtorusBasis h = center_subtorus(c);
    const GradedCdga& x = c.scene.cdga;
    Json doc = envelope(c, kirwan ? "kirwan" : "blowup");
    doc["subtorus"] = subtorus_json(h);
    std::vector<Chart> charts;
    if (kirwan) {
        Ideal j = saturation_ideal(x, h, c.config().degree_cap);
        doc["saturation"] = strings_json(j.generators(), x.ring_names(), same_kind(c.order(), x.nvars()));
        charts = kirwan_charts(x, h, j);
    } else {
        charts = blowup_charts(x, h);
    }
    charts = select_charts(std::move(charts), c.flags.chart);
    std::ostream& t = c.text();
    t << c.paint.bold(kirwan ? "Kirwan blow-up" : "blow-up") << " along subtorus " << h.to_string();
    if (kirwan)
        t << ", saturation V" << ideal_text(doc["saturation"]);
    t << ":\n";
    doc["charts"] = Json::array();
    bool all_ok = true;
    for (const Chart& ch : charts) {
        Json cj = chart_json(ch, c.order());
        const bool ok = crosscheck_truncation(ch, x, h);
        all_ok = all_ok && ok;
        cj["crosscheck"] = ok;
        t << "  " << c.paint.bold(ch.name) << " (exceptional " << ch.exceptional().name << ")";
        if (ch.fully_unstable)
            t << " " << c.paint.bad("fully unstable");
        t << "\n";
        print_cdga(t, cj["cdga"], "    ");
        t << "    crosscheck: " << (ok ? c.paint.good("ok") : c.paint.bad("FAILED")) << "\n";
        doc["charts"].push_back(std::move(cj));
    }
    c.emit(doc);
    if (!all_ok)
        throw InvariantBreach("truncation crosscheck failed on at least one chart");
    return exit_code::ok;
}

inline void print_tree(std::ostream& t, const ReductionNode& n, const Painter& paint, const std::string& indent) {
    t << indent << paint.bold(n.parent_id.empty() ? n.id : n.chart_name);
    if (n.branch && n.branch->rank() > 0 && !n.parent_id.empty())
        t << paint.dim(" [" + n.branch->to_string() + "]");
    const auto names = n.cdga.ring_names();
    const auto order = MonomialOrder::grevlex(n.cdga.nvars());
    t << "  max_dim " << n.stabilizer.max_dim;
    if (n.is_leaf()) {
        if (n.fully_unstable || n.stabilizer.semistable_empty)
            t << "  " << paint.bad("fully unstable");
        else
            t << "  " << paint.good("DM");
        std::vector<std::string> ex;
        for (const Polynomial& g : n.cdga.excluded.generators())
            ex.push_back(g.to_string(names, order));
        t << "  excluded V(" << (ex.empty() ? "0" : join(ex, ", ")) << ")";
    }
    t << "\n";
    for (const ReductionNode& c : n.children)
        print_tree(t, c, paint, indent + "  ");
}

inline std::string plural(std::size_t n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

inline int cmd_reduce(Context& c, bool report_only) {
    const ReductionConfig cfg = c.config();
    ReductionNode root = stabilizer_reduce(c.scene.cdga, cfg);
    Json doc = report_document(root, c.bytes, c.order(), cfg);
    doc["command"] = report_only ? "report" : "reduce";
    const TreeSummary s = summarize(root);
    std::ostream& t = c.text();
    if (report_only) {
        Json leaves_json = Json::array();
        for (const ReductionNode* leaf : leaves(root)) {
            if (!leaf->leaf_report || !leaf->leaf_report->dm || leaf->fully_unstable)
                continue;
            const ObstructionReport& r = *leaf->leaf_report;
            Json lj = obstruction_json(r);
            lj["node"] = leaf->id;
            leaves_json.push_back(lj);
            t << c.paint.bold(leaf->id) << ": vdim " << r.vdim << ", e_ranks "
              << (r.e_ranks ? "(" + std::to_string(r.e_ranks->first) + "," + std::to_string(r.e_ranks->second) + ")"
                            : std::string("omitted"))
              << ", dagger " << (r.dagger ? "yes" : "no") << ", quasi-smooth " << (r.quasi_smooth ? "yes" : "no")
              << "\n";
        }
        if (leaves_json.empty())
            t << "no DM charts with semistable points\n";
        Json out = envelope(c, "report");
        out["leaves"] = leaves_json;
        c.emit(out);
        return exit_code::ok;
    }
    print_tree(t, root, c.paint, "");
    t << "summary: " << plural(s.blowups, "blow-up") << ", " << plural(s.dm_charts, "DM chart");
    if (s.fully_unstable_charts > 0)
        t << ", " << plural(s.fully_unstable_charts, "fully-unstable chart");
    if (s.semistable_empty())
        t << "; " << c.paint.bad("semistable locus is empty");
    t << "\n";
    const std::size_t checks = doc["invariants"]["checked"].get<std::size_t>();
    t << "invariants: " << checks << " checked, " << c.paint.good("all passed") << "\n";
    c.emit(doc);
    return exit_code::ok;
}

} // namespace cli_detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                       bool color = false) {
    using namespace cli_detail;
    CLI::App app{"Derived Kirwan blow-ups and stabilizer reduction for torus-graded presentations", tool_name};
    app.set_version_flag("--version", std::string(tool_name) + " " + tool_version);
    app.require_subcommand(1);
    Flags flags;

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"validate", "check a scene's presentation"},
        {"pi0", "print the classical truncation"},
        {"fixed-locus", "derived fixed locus of a subtorus"},
        {"rees", "extended Rees presentation along the fixed locus"},
        {"blowup", "equivariant blow-up charts"},
        {"kirwan", "blow-up charts with the unstable locus removed"},
        {"reduce", "iterated stabilizer reduction"},
        {"report", "obstruction reports of the DM charts"},
    };
    std::vector<CLI::App*> subs;
    for (const Command& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--scene", flags.scene, "scene JSON file")->required();
        sub->add_option("--subtorus", flags.subtorus, "subtorus basis, e.g. \"1,0;0,1\"");
        sub->add_option("--order", flags.order, "monomial order for printing and division")
            ->check(CLI::IsMember({"lex", "grevlex"}));
        sub->add_option("--chart", flags.chart, "restrict output to one chart");
        sub->add_option("--json", flags.json, "write the JSON document to PATH ('-' for stdout)");
        sub->add_option("--degree-cap", flags.degree_cap, "invariant-monomial degree cap");
        sub->add_option("--depth-fuse", flags.depth_fuse, "maximum reduction depth");
        sub->add_option("--seed", flags.seed, "seed for random rank probing");
        subs.push_back(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }
    for (CLI::App* sub : subs) {
        flags.has_degree_cap = flags.has_degree_cap || sub->count("--degree-cap") > 0;
        flags.has_depth_fuse = flags.has_depth_fuse || sub->count("--depth-fuse") > 0;
        flags.has_seed = flags.has_seed || sub->count("--seed") > 0;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    Context ctx{flags, out, err, Painter(color), {}, {}, {}};
    try {
        ctx.bytes = read_file(flags.scene);
        if (command == "validate")
            return cmd_validate(ctx);
        ctx.scene = scene_from_text(ctx.bytes);
        if (command == "pi0")
            return cmd_pi0(ctx);
        if (command == "fixed-locus")
            return cmd_fixed_locus(ctx);
        if (command == "rees")
            return cmd_rees(ctx);
        if (command == "blowup")
            return cmd_charts(ctx, false);
        if (command == "kirwan")
            return cmd_charts(ctx, true);
        if (command == "reduce")
            return cmd_reduce(ctx, false);
        return cmd_reduce(ctx, true);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        for (std::size_t i = 1; i < e.violations().size(); ++i)
            err << "  - " << e.violations()[i] << "\n";
        return exit_code::validation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
        return exit_code::usage;
    } catch (const UnknownVariable& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const InvariantBreach& e) {
        err << "internal invariant breach: " << e.what() << "\n";
        return exit_code::breach;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
}

} // namespace kirwan
