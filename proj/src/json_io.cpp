#include "gt/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace gt {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key: ") + key);
    return *it;
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::map<std::string, std::map<ElemId, ElemId>> parse_components(const json& j,
                                                                 const char* what) {
    if (!j.is_object()) throw ParseError(std::string(what) + " must be an object");
    std::map<std::string, std::map<ElemId, ElemId>> out;
    for (const auto& [obj, comp] : j.items()) {
        if (!comp.is_object()) throw ParseError(std::string(what) + " components must be objects");
        for (const auto& [from, to] : comp.items()) {
            out[obj][from] = as_string(to, what);
        }
    }
    return out;
}

json components_json(const PresheafMorphism& m) {
    json comp = json::object();
    for (const auto& [obj, cmap] : m.components()) {
        json one = json::object();
        for (const auto& [from, to] : cmap) one[from] = to;
        comp[obj] = std::move(one);
    }
    return comp;
}

// Structural placement only; totality and naturality belong to the
// validation pass (exit code 3 territory, not a parse error).
PresheafMorphism morphism_from_components(
    const Presheaf& source, const Presheaf& target,
    const std::map<std::string, std::map<ElemId, ElemId>>& comps, const char* what) {
    PresheafMorphism m(source, target);
    for (const auto& [obj, cmap] : comps) {
        if (!source.base().has_object(obj)) {
            throw ParseError(std::string(what) + " references unknown object " + obj);
        }
        for (const auto& [from, to] : cmap) m.set(obj, from, to);
    }
    return m;
}

json base_json(const BaseCategory& b) {
    json out;
    out["objects"] = b.objects();
    json gens = json::array();
    for (const auto& g : b.generators()) {
        gens.push_back({{"name", g.name}, {"src", g.src}, {"dst", g.dst}});
    }
    out["morphisms"] = std::move(gens);
    json rels = json::array();
    for (const auto& [lhs, rhs] : b.relations()) rels.push_back({lhs, rhs});
    out["relations"] = std::move(rels);
    return out;
}

std::shared_ptr<const BaseCategory> base_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("base category must be an object");
    std::vector<std::string> objects;
    for (const auto& o : field(j, "objects")) objects.push_back(as_string(o, "object name"));
    std::vector<Generator> generators;
    for (const auto& g : field(j, "morphisms")) {
        generators.push_back({as_string(field(g, "name"), "morphism name"),
                              as_string(field(g, "src"), "morphism src"),
                              as_string(field(g, "dst"), "morphism dst")});
    }
    std::vector<std::pair<GeneratorPath, GeneratorPath>> relations;
    if (j.contains("relations")) {
        for (const auto& rel : j["relations"]) {
            if (!rel.is_array() || rel.size() != 2) {
                throw ParseError("each relation must be a pair of paths");
            }
            GeneratorPath lhs, rhs;
            for (const auto& n : rel[0]) lhs.push_back(as_string(n, "relation path entry"));
            for (const auto& n : rel[1]) rhs.push_back(as_string(n, "relation path entry"));
            relations.emplace_back(std::move(lhs), std::move(rhs));
        }
    }
    try {
        return std::make_shared<const BaseCategory>(std::move(objects), std::move(generators),
                                                    std::move(relations));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json presheaf_json(const Presheaf& p) {
    json elems = json::object();
    for (const auto& obj : p.base().objects()) elems[obj] = p.elements(obj);
    json maps = json::object();
    for (const auto& gen : p.base().generators()) {
        json one = json::object();
        for (const auto& [from, to] : p.action(gen.name)) one[from] = to;
        maps[gen.name] = std::move(one);
    }
    return {{"elements", std::move(elems)}, {"maps", std::move(maps)}};
}

Presheaf presheaf_from_json(const json& j, const std::shared_ptr<const BaseCategory>& base) {
    if (!j.is_object()) throw ParseError("presheaf must be an object");
    Presheaf p(base);
    const json& elems = field(j, "elements");
    if (!elems.is_object()) throw ParseError("\"elements\" must be an object");
    for (const auto& [obj, ids] : elems.items()) {
        if (!base->has_object(obj)) throw ParseError("unknown object in elements: " + obj);
        if (!ids.is_array()) throw ParseError("carrier of " + obj + " must be an array");
        for (const auto& id : ids) {
            try {
                p.add_element(obj, as_string(id, "element id"));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what());
            }
        }
    }
    if (j.contains("maps")) {
        const json& maps = j["maps"];
        if (!maps.is_object()) throw ParseError("\"maps\" must be an object");
        for (const auto& [gen, entries] : maps.items()) {
            if (!base->has_generator(gen)) throw ParseError("unknown generator in maps: " + gen);
            if (!entries.is_object()) throw ParseError("map of " + gen + " must be an object");
            for (const auto& [from, to] : entries.items()) {
                p.set_action(gen, from, as_string(to, "map target"));
            }
        }
    }
    return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::shared_ptr<const BaseCategory> parse_base_category(const std::string& text) {
    return base_from_json(parse_text(text));
}

std::string serialize_base_category(const BaseCategory& b) { return dump(base_json(b)); }

Presheaf parse_presheaf(const std::string& text,
                        const std::shared_ptr<const BaseCategory>& base) {
    return presheaf_from_json(parse_text(text), base);
}

std::string serialize_presheaf(const Presheaf& p) { return dump(presheaf_json(p)); }

PresheafMorphism parse_morphism(const std::string& text, const Presheaf& source,
                                const Presheaf& target) {
    json j = parse_text(text);
    PresheafMorphism m = morphism_from_components(
        source, target, parse_components(field(j, "components"), "morphism"), "morphism");
    ValidationReport r = validate_morphism(m);
    if (!r.ok()) throw ParseError("morphism: " + r.message);
    return m;
}

std::string serialize_morphism(const PresheafMorphism& m) {
    return dump(json{{"components", components_json(m)}});
}

RuleSystem parse_rule_system(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object()) throw ParseError("rule system must be an object");
    std::shared_ptr<const BaseCategory> base = base_from_json(field(j, "base"));

    std::vector<Rule> rules;
    for (const auto& r : field(j, "rules")) {
        Rule rule;
        rule.id = as_string(field(r, "id"), "rule id");
        rule.lhs = presheaf_from_json(field(r, "lhs"), base);
        rule.rhs = presheaf_from_json(field(r, "rhs"), base);
        rules.push_back(std::move(rule));
    }
    auto find_rule = [&](const std::string& id) -> const Rule& {
        for (const auto& r : rules) {
            if (r.id == id) return r;
        }
        throw ParseError("inclusion references unknown rule: " + id);
    };

    std::vector<RuleInclusion> inclusions;
    if (j.contains("inclusions")) {
        for (const auto& i : j["inclusions"]) {
            RuleInclusion inc;
            inc.id = as_string(field(i, "id"), "inclusion id");
            inc.src = as_string(field(i, "src"), "inclusion src");
            inc.dst = as_string(field(i, "dst"), "inclusion dst");
            const Rule& src = find_rule(inc.src);
            const Rule& dst = find_rule(inc.dst);
            inc.lhs_map = morphism_from_components(
                src.lhs, dst.lhs, parse_components(field(i, "lhs_map"), "lhs_map"),
                ("inclusion " + inc.id + " lhs_map").c_str());
            inc.rhs_map = morphism_from_components(
                src.rhs, dst.rhs, parse_components(field(i, "rhs_map"), "rhs_map"),
                ("inclusion " + inc.id + " rhs_map").c_str());
            inclusions.push_back(std::move(inc));
        }
    }
    try {
        return RuleSystem(base, std::move(rules), std::move(inclusions));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string serialize_rule_system(const RuleSystem& rs) {
    json out;
    out["base"] = base_json(rs.base());
    json rules = json::array();
    for (const auto& r : rs.rules()) {
        rules.push_back(
            {{"id", r.id}, {"lhs", presheaf_json(r.lhs)}, {"rhs", presheaf_json(r.rhs)}});
    }
    out["rules"] = std::move(rules);
    json incs = json::array();
    for (const auto& i : rs.inclusions()) {
        incs.push_back({{"id", i.id},
                        {"src", i.src},
                        {"dst", i.dst},
                        {"lhs_map", components_json(i.lhs_map)},
                        {"rhs_map", components_json(i.rhs_map)}});
    }
    out["inclusions"] = std::move(incs);
    return dump(out);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

} // namespace gt
