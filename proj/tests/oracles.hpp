#pragma once

// Test-only helpers: graph builders, deterministic random instances, and
// brute-force oracles kept independent of the library's search code.

#include "gt/engine.hpp"
#include "gt/json_io.hpp"

#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testutil {

inline std::shared_ptr<const gt::BaseCategory> graph_base_ptr() {
    static std::shared_ptr<const gt::BaseCategory> base =
        std::make_shared<const gt::BaseCategory>(gt::graph_base());
    return base;
}

// Directed multigraph presheaf from vertex names and edge -> (src, tgt).
inline gt::Presheaf make_graph(const std::vector<std::string>& vs,
                               const std::map<std::string, std::pair<std::string, std::string>>& es) {
    gt::Presheaf p(graph_base_ptr());
    for (const auto& v : vs) p.add_element("v", v);
    for (const auto& [e, st] : es) {
        p.add_element("e", e);
        p.set_action("s", e, st.first);
        p.set_action("t", e, st.second);
    }
    return p;
}

inline std::string data_dir() {
    const char* env = std::getenv("GT_DATA");
    return env ? env : "data";
}

inline gt::Presheaf load_graph(const std::string& name) {
    return gt::parse_presheaf(gt::read_file(data_dir() + "/" + name), graph_base_ptr());
}

inline gt::RuleSystem load_system(const std::string& name) {
    return gt::parse_rule_system(gt::read_file(data_dir() + "/" + name));
}

// ---------------------------------------------------------------------------
// Brute-force oracles. These enumerate raw component families and filter,
// with no search-order tricks, so they stay independent of gt::find_monos.

inline void all_injections(const std::vector<gt::ElemId>& from,
                           const std::vector<gt::ElemId>& to,
                           std::vector<std::map<gt::ElemId, gt::ElemId>>& out) {
    std::vector<std::map<gt::ElemId, gt::ElemId>> partial{{}};
    for (const auto& x : from) {
        std::vector<std::map<gt::ElemId, gt::ElemId>> next;
        for (const auto& m : partial) {
            for (const auto& y : to) {
                bool taken = false;
                for (const auto& [k, v] : m) {
                    if (v == y) {
                        taken = true;
                        break;
                    }
                }
                if (taken) continue;
                auto m2 = m;
                m2[x] = y;
                next.push_back(std::move(m2));
            }
        }
        partial = std::move(next);
    }
    out = std::move(partial);
}

inline void all_functions(const std::vector<gt::ElemId>& from,
                          const std::vector<gt::ElemId>& to,
                          std::vector<std::map<gt::ElemId, gt::ElemId>>& out) {
    std::vector<std::map<gt::ElemId, gt::ElemId>> partial{{}};
    for (const auto& x : from) {
        std::vector<std::map<gt::ElemId, gt::ElemId>> next;
        for (const auto& m : partial) {
            for (const auto& y : to) {
                auto m2 = m;
                m2[x] = y;
                next.push_back(std::move(m2));
            }
        }
        partial = std::move(next);
    }
    out = std::move(partial);
}

inline bool natural_family(const gt::Presheaf& p, const gt::Presheaf& q,
                           const std::map<std::string, std::map<gt::ElemId, gt::ElemId>>& fam) {
    for (const auto& gen : p.base().generators()) {
        for (const auto& x : p.elements(gen.dst)) {
            const gt::ElemId& lhs = fam.at(gen.src).at(p.act(gen.name, x));
            const gt::ElemId& rhs = q.act(gen.name, fam.at(gen.dst).at(x));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

// Every mono p -> q by exhaustive enumeration of injective families.
inline std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>>
brute_force_monos(const gt::Presheaf& p, const gt::Presheaf& q) {
    std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>> families{{}};
    for (const auto& obj : p.base().objects()) {
        std::vector<std::map<gt::ElemId, gt::ElemId>> choices;
        all_injections(p.elements(obj), q.elements(obj), choices);
        std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>> next;
        for (const auto& fam : families) {
            for (const auto& c : choices) {
                auto fam2 = fam;
                fam2[obj] = c;
                next.push_back(std::move(fam2));
            }
        }
        families = std::move(next);
    }
    std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>> out;
    for (const auto& fam : families) {
        if (natural_family(p, q, fam)) out.push_back(fam);
    }
    return out;
}

// Every morphism p -> q (no injectivity), for universality checks.
inline std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>>
brute_force_morphisms(const gt::Presheaf& p, const gt::Presheaf& q) {
    std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>> families{{}};
    for (const auto& obj : p.base().objects()) {
        std::vector<std::map<gt::ElemId, gt::ElemId>> choices;
        all_functions(p.elements(obj), q.elements(obj), choices);
        std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>> next;
        for (const auto& fam : families) {
            for (const auto& c : choices) {
                auto fam2 = fam;
                fam2[obj] = c;
                next.push_back(std::move(fam2));
            }
        }
        families = std::move(next);
    }
    std::vector<std::map<std::string, std::map<gt::ElemId, gt::ElemId>>> out;
    for (const auto& fam : families) {
        if (natural_family(p, q, fam)) out.push_back(fam);
    }
    return out;
}

inline gt::PresheafMorphism family_to_morphism(
    const gt::Presheaf& p, const gt::Presheaf& q,
    const std::map<std::string, std::map<gt::ElemId, gt::ElemId>>& fam) {
    gt::PresheafMorphism m(p, q);
    for (const auto& [obj, comp] : fam) {
        for (const auto& [from, to] : comp) m.set(obj, from, to);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Deterministic random instances.

inline gt::Presheaf random_graph(std::mt19937& rng, std::size_t max_vertices,
                                 std::size_t max_edges) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    const std::size_t vertices = nv(rng);
    std::uniform_int_distribution<std::size_t> ne(0, max_edges);
    const std::size_t edges = ne(rng);
    std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
    std::map<std::string, std::pair<std::string, std::string>> es;
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < vertices; ++i) vs.push_back("v" + std::to_string(i));
    for (std::size_t i = 0; i < edges; ++i) {
        es["e" + std::to_string(i)] = {vs[pick(rng)], vs[pick(rng)]};
    }
    return make_graph(vs, es);
}

// Connected (in the undirected sense) and loop-free: a random spanning tree
// with random orientations plus a few extra edges between distinct
// vertices. Total elements stay within max_elements.
inline gt::Presheaf random_connected_graph(std::mt19937& rng, std::size_t max_elements) {
    std::uniform_int_distribution<std::size_t> nv(1, (max_elements + 1) / 2);
    const std::size_t vertices = nv(rng);
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < vertices; ++i) vs.push_back("v" + std::to_string(i));
    std::map<std::string, std::pair<std::string, std::string>> es;
    std::size_t edge_id = 0;
    for (std::size_t i = 1; i < vertices; ++i) {
        std::uniform_int_distribution<std::size_t> anchor(0, i - 1);
        std::size_t j = anchor(rng);
        bool flip = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        es["e" + std::to_string(edge_id++)] =
            flip ? std::make_pair(vs[i], vs[j]) : std::make_pair(vs[j], vs[i]);
    }
    std::size_t budget = max_elements - vertices - (vertices - 1);
    if (vertices >= 2 && budget > 0) {
        std::uniform_int_distribution<std::size_t> extra(0, budget);
        std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
        for (std::size_t k = extra(rng); k > 0; --k) {
            std::size_t a = pick(rng), b = pick(rng);
            if (a == b) continue;
            es["e" + std::to_string(edge_id++)] = {vs[a], vs[b]};
        }
    }
    return make_graph(vs, es);
}

// Random span collection between two graphs: each apex is a subgraph of p1
// (left leg the inclusion) with a right leg built by fixing random edge
// images and forcing vertex images through naturality.
inline std::vector<gt::Span> random_spans(std::mt19937& rng, const gt::Presheaf& p1,
                                          const gt::Presheaf& p2, std::size_t max_spans);

inline gt::Diagram span_diagram(const gt::Presheaf& p1, const gt::Presheaf& p2,
                                const std::vector<gt::Span>& spans) {
    gt::Diagram d;
    d.nodes.push_back(p1);
    d.nodes.push_back(p2);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        d.nodes.push_back(spans[i].apex);
        d.arrows.push_back({2 + i, 0, spans[i].left});
        d.arrows.push_back({2 + i, 1, spans[i].right});
    }
    return d;
}

// A random sub-presheaf inclusion into p: a subset of edges, their
// endpoints, and possibly further vertices.
inline gt::PresheafMorphism random_subgraph_inclusion(std::mt19937& rng, const gt::Presheaf& p) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::set<gt::ElemId> edges, vertices;
    for (const auto& e : p.elements("e")) {
        if (coin(rng) == 1) {
            edges.insert(e);
            vertices.insert(p.act("s", e));
            vertices.insert(p.act("t", e));
        }
    }
    for (const auto& v : p.elements("v")) {
        if (coin(rng) == 1) vertices.insert(v);
    }
    gt::Presheaf sub(p.base_ptr());
    for (const auto& v : p.elements("v")) {
        if (vertices.count(v)) sub.add_element("v", v);
    }
    for (const auto& e : p.elements("e")) {
        if (!edges.count(e)) continue;
        sub.add_element("e", e);
        sub.set_action("s", e, p.act("s", e));
        sub.set_action("t", e, p.act("t", e));
    }
    gt::PresheafMorphism inc(sub, p);
    for (const auto& obj : p.base().objects()) {
        for (const auto& x : sub.elements(obj)) inc.set(obj, x, x);
    }
    return inc;
}

inline std::vector<gt::Span> random_spans(std::mt19937& rng, const gt::Presheaf& p1,
                                          const gt::Presheaf& p2, std::size_t max_spans) {
    std::uniform_int_distribution<std::size_t> count(0, max_spans);
    std::vector<gt::Span> spans;
    for (std::size_t k = count(rng); k > 0; --k) {
        gt::PresheafMorphism left = random_subgraph_inclusion(rng, p1);
        const gt::Presheaf& apex = left.source();
        gt::PresheafMorphism right(apex, p2);
        std::map<gt::ElemId, gt::ElemId> vertex_image;
        bool ok = true;
        if (!apex.elements("e").empty() && p2.elements("e").empty()) continue;
        for (const auto& e : apex.elements("e")) {
            const auto& candidates = p2.elements("e");
            const gt::ElemId& img =
                candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
            right.set("e", e, img);
            for (const char* gen : {"s", "t"}) {
                const gt::ElemId& from = apex.act(gen, e);
                const gt::ElemId& to = p2.act(gen, img);
                auto it = vertex_image.find(from);
                if (it != vertex_image.end() && it->second != to) {
                    ok = false;
                    break;
                }
                vertex_image[from] = to;
            }
            if (!ok) break;
        }
        if (!ok || p2.elements("v").empty()) continue;
        for (const auto& v : apex.elements("v")) {
            if (!vertex_image.count(v)) {
                const auto& candidates = p2.elements("v");
                vertex_image[v] =
                    candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
            }
            right.set("v", v, vertex_image[v]);
        }
        if (!gt::validate_morphism(right).ok()) continue;
        spans.push_back(gt::Span{apex, left, right});
    }
    return spans;
}

} // namespace testutil
