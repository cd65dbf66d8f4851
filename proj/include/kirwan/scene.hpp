#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kirwan/cdga.hpp"
#include "kirwan/errors.hpp"
#include "kirwan/parse.hpp"

namespace kirwan {

using Json = nlohmann::ordered_json;

struct SceneOptions {
    std::optional<std::string> order; // "lex" or "grevlex"
    std::optional<std::size_t> degree_cap;
    std::optional<std::size_t> depth_fuse;
    std::optional<std::uint64_t> seed;
    friend bool operator==(const SceneOptions&, const SceneOptions&) = default;
};

struct Scene {
    GradedCdga cdga;
    SceneOptions options;
};

inline MonomialOrder order_from_name(const std::string& name, std::size_t nvars) {
    if (name == "lex")
        return MonomialOrder::lex(nvars);
    if (name == "grevlex")
        return MonomialOrder::grevlex(nvars);
    throw SchemaError("unknown monomial order '" + name + "' (expected lex or grevlex)");
}

inline MonomialOrder scene_order(const Scene& s) {
    return order_from_name(s.options.order.value_or("grevlex"), s.cdga.nvars());
}

namespace detail {

inline void allow_only(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object())
        throw SchemaError(where + ": expected an object");
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (const char* key : keys)
            known = known || k == key;
        if (!known)
            throw SchemaError(where + ": unknown field '" + k + "'");
    }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

inline std::string require_string(const Json& obj, const char* key, const std::string& where) {
    const Json& v = require(obj, key, where);
    if (!v.is_string())
        throw SchemaError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline std::uint64_t require_unsigned(const Json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw SchemaError(where + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline Weight parse_weight(const Json& obj, std::size_t k, const std::string& where) {
    const Json& v = require(obj, "weight", where);
    if (!v.is_array())
        throw SchemaError(where + ": weight must be an array of integers");
    if (v.size() != k)
        throw SchemaError(where + ": weight has length " + std::to_string(v.size()) + " but torus_rank is " +
                          std::to_string(k));
    IntVector c;
    for (const Json& e : v) {
        if (!e.is_number_integer())
            throw SchemaError(where + ": weight entries must be integers");
        c.push_back(e.get<std::int64_t>());
    }
    return Weight(std::move(c));
}

inline Polynomial parse_payload(const std::string& src, const std::vector<std::string>& names,
                                const std::string& where) {
    try {
        return parse_polynomial(src, names);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.column(), e.expected(), where + ": " + e.what());
    } catch (const UnknownVariable& e) {
        throw UnknownVariable(e.name(), where + ": " + e.what());
    }
}

} // namespace detail

/// Schema-level parse of a scene document. Presentation-level validity is not checked.
inline Scene parse_scene(const Json& doc) {
    using namespace detail;
    allow_only(doc, {"torus_rank", "variables", "gens1", "gens2", "options"}, "scene");
    Scene s;
    const std::size_t k = require_unsigned(require(doc, "torus_rank", "scene"), "torus_rank");

    const Json& vars = require(doc, "variables", "scene");
    if (!vars.is_array())
        throw SchemaError("variables: expected an array");
    std::vector<GradedVariable> ring;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string where = "variables[" + std::to_string(i) + "]";
        allow_only(vars[i], {"name", "weight"}, where);
        ring.push_back({require_string(vars[i], "name", where), 0, parse_weight(vars[i], k, where)});
    }
    s.cdga = GradedCdga(k, std::move(ring));
    const std::vector<std::string> names = s.cdga.ring_names();

    if (auto it = doc.find("gens1"); it != doc.end()) {
        if (!it->is_array())
            throw SchemaError("gens1: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const Json& g = (*it)[i];
            const std::string where = "gens1[" + std::to_string(i) + "]";
            allow_only(g, {"name", "weight", "differential"}, where);
            std::string name = require_string(g, "name", where);
            Polynomial d = parse_payload(require_string(g, "differential", where), names, "gens1 '" + name + "'");
            s.cdga.gens1.push_back({{name, 1, parse_weight(g, k, where)}, std::move(d)});
        }
    }
    if (auto it = doc.find("gens2"); it != doc.end()) {
        if (!it->is_array())
            throw SchemaError("gens2: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const Json& g = (*it)[i];
            const std::string where = "gens2[" + std::to_string(i) + "]";
            allow_only(g, {"name", "weight", "differential"}, where);
            Gen2 y{{require_string(g, "name", where), 2, parse_weight(g, k, where)}, {}};
            const Json& d = require(g, "differential", where);
            if (!d.is_object())
                throw SchemaError(where + ": differential must map degree-1 generator names to polynomials");
            for (const auto& [target, payload] : d.items()) {
                if (!payload.is_string())
                    throw SchemaError(where + ": coefficient of '" + target + "' must be a string");
                y.differential.emplace(target, parse_payload(payload.get<std::string>(), names,
                                                             "gens2 '" + y.var.name + "'"));
            }
            s.cdga.gens2.push_back(std::move(y));
        }
    }
    if (auto it = doc.find("options"); it != doc.end()) {
        allow_only(*it, {"order", "degree_cap", "depth_fuse", "seed"}, "options");
        if (auto o = it->find("order"); o != it->end()) {
            if (!o->is_string())
                throw SchemaError("options.order must be a string");
            s.options.order = o->get<std::string>();
            order_from_name(*s.options.order, 0);
        }
        if (auto o = it->find("degree_cap"); o != it->end())
            s.options.degree_cap = require_unsigned(*o, "options.degree_cap");
        if (auto o = it->find("depth_fuse"); o != it->end())
            s.options.depth_fuse = require_unsigned(*o, "options.depth_fuse");
        if (auto o = it->find("seed"); o != it->end())
            s.options.seed = require_unsigned(*o, "options.seed");
    }
    return s;
}

inline Scene parse_scene_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("scene is not well-formed JSON: ") + e.what());
    }
    return parse_scene(doc);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("error reading '" + path + "'");
    return ss.str();
}

/// Parses and validates; presentation-level violations raise ValidationError.
inline Scene scene_from_text(std::string_view text) {
    Scene s = parse_scene_text(text);
    ValidationReport rep = validate_presentation(s.cdga);
    if (!rep.ok())
        throw ValidationError(rep.violations, "scene fails validation: " + rep.violations.front());
    return s;
}

inline Scene load_scene(const std::string& path) { return scene_from_text(read_file(path)); }

inline Json weight_to_json(const Weight& w) {
    Json a = Json::array();
    for (std::int64_t c : w.components())
        a.push_back(c);
    return a;
}

inline Json scene_to_json(const Scene& s) {
    const GradedCdga& x = s.cdga;
    const auto names = x.ring_names();
    const MonomialOrder order = scene_order(s);
    Json doc;
    doc["torus_rank"] = x.torus_rank;
    doc["variables"] = Json::array();
    for (const auto& v : x.ring_vars)
        doc["variables"].push_back({{"name", v.name}, {"weight", weight_to_json(v.weight)}});
    doc["gens1"] = Json::array();
    for (const auto& g : x.gens1)
        doc["gens1"].push_back({{"name", g.var.name},
                                {"weight", weight_to_json(g.var.weight)},
                                {"differential", g.differential.to_string(names, order)}});
    doc["gens2"] = Json::array();
    for (const auto& y : x.gens2) {
        Json d = Json::object();
        for (const auto& [target, coef] : y.differential)
            d[target] = coef.to_string(names, order);
        doc["gens2"].push_back({{"name", y.var.name}, {"weight", weight_to_json(y.var.weight)}, {"differential", d}});
    }
    Json opts = Json::object();
    if (s.options.order)
        opts["order"] = *s.options.order;
    if (s.options.degree_cap)
        opts["degree_cap"] = *s.options.degree_cap;
    if (s.options.depth_fuse)
        opts["depth_fuse"] = *s.options.depth_fuse;
    if (s.options.seed)
        opts["seed"] = *s.options.seed;
    if (!opts.empty())
        doc["options"] = opts;
    return doc;
}

} // namespace kirwan
