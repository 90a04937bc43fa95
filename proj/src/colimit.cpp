#include "gt/colimit.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace gt {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

// Element quotient shared by colimit_of_diagram and generalized_pushout:
// one slot per (node, object, element), merged along every arrow.
struct Quotient {
    // slot ids per object: (node index, element) -> dense index
    std::map<std::string, std::map<std::pair<std::size_t, ElemId>, std::size_t>> slots;
    std::map<std::string, std::vector<std::pair<std::size_t, ElemId>>> by_index;
    std::map<std::string, UnionFind> uf;

    explicit Quotient(const Diagram& d) {
        const BaseCategory& base = d.nodes.front().base();
        for (const auto& obj : base.objects()) {
            auto& slot = slots[obj];
            auto& rev = by_index[obj];
            for (std::size_t i = 0; i < d.nodes.size(); ++i) {
                for (const auto& x : d.nodes[i].elements(obj)) {
                    slot[{i, x}] = rev.size();
                    rev.emplace_back(i, x);
                }
            }
            uf.emplace(obj, UnionFind(rev.size()));
        }
        for (const auto& a : d.arrows) {
            for (const auto& obj : base.objects()) {
                for (const auto& x : d.nodes[a.from].elements(obj)) {
                    uf.at(obj).unite(slots[obj].at({a.from, x}),
                                     slots[obj].at({a.to, a.mor.apply(obj, x)}));
                }
            }
        }
    }

    std::size_t root(const std::string& obj, std::size_t node, const ElemId& x) {
        return uf.at(obj).find(slots.at(obj).at({node, x}));
    }
};

std::string tagged(std::size_t node, const ElemId& x) {
    return std::to_string(node) + "/" + x;
}

} // namespace

Cocone colimit_of_diagram(const Diagram& d) {
    if (d.nodes.empty()) {
        return {d, Presheaf(), {}};
    }
    Quotient q(d);
    const BaseCategory& base = d.nodes.front().base();

    // Name each class by its least tagged member.
    std::map<std::string, std::map<std::size_t, ElemId>> class_name;
    for (const auto& obj : base.objects()) {
        std::map<std::size_t, ElemId> names;
        for (const auto& [node_elem, idx] : q.slots.at(obj)) {
            std::size_t root = q.uf.at(obj).find(idx);
            std::string candidate = tagged(node_elem.first, node_elem.second);
            auto it = names.find(root);
            if (it == names.end() || candidate < it->second) names[root] = candidate;
        }
        class_name[obj] = std::move(names);
    }

    Presheaf apex(d.nodes.front().base_ptr());
    for (const auto& obj : base.objects()) {
        std::vector<ElemId> names;
        for (const auto& [root, name] : class_name.at(obj)) names.push_back(name);
        std::sort(names.begin(), names.end());
        for (const auto& n : names) apex.add_element(obj, n);
    }
    // Induced actions: evaluate on any member; agreement across members is
    // forced by naturality of the arrows, so disagreement is a logic error.
    for (const auto& gen : base.generators()) {
        std::map<ElemId, ElemId> assigned;
        for (std::size_t i = 0; i < d.nodes.size(); ++i) {
            for (const auto& x : d.nodes[i].elements(gen.dst)) {
                const ElemId& from = class_name.at(gen.dst).at(q.root(gen.dst, i, x));
                const ElemId to =
                    class_name.at(gen.src).at(q.root(gen.src, i, d.nodes[i].act(gen.name, x)));
                auto it = assigned.find(from);
                if (it == assigned.end()) {
                    assigned[from] = to;
                    apex.set_action(gen.name, from, to);
                } else {
                    assert(it->second == to && "induced colimit action conflict");
                }
            }
        }
    }

    std::vector<PresheafMorphism> legs;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        PresheafMorphism leg(d.nodes[i], apex);
        for (const auto& obj : base.objects()) {
            for (const auto& x : d.nodes[i].elements(obj)) {
                leg.set(obj, x, class_name.at(obj).at(q.root(obj, i, x)));
            }
        }
        legs.push_back(std::move(leg));
    }
    return {d, std::move(apex), std::move(legs)};
}

GeneralizedPushoutResult generalized_pushout(const Presheaf& p1, const Presheaf& p2,
                                             const std::vector<Span>& spans) {
    Diagram d;
    d.nodes.push_back(p1);
    d.nodes.push_back(p2);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        const Span& s = spans[i];
        if (!s.left.source().same_presentation(s.apex) ||
            !s.right.source().same_presentation(s.apex) ||
            !s.left.target().same_presentation(p1) || !s.right.target().same_presentation(p2)) {
            throw std::invalid_argument("generalized_pushout: span #" + std::to_string(i) +
                                        " does not target the given feet");
        }
        d.nodes.push_back(s.apex);
        d.arrows.push_back({2 + i, 0, s.left});
        d.arrows.push_back({2 + i, 1, s.right});
    }

    Quotient q(d);
    const BaseCategory& base = p1.base();

    // Injectivity of the p1 leg decides the naming scheme: keep p1 names
    // verbatim when no two p1 elements collapse.
    bool leg1_injective = true;
    for (const auto& obj : base.objects()) {
        std::set<std::size_t> roots;
        for (const auto& x : p1.elements(obj)) {
            if (!roots.insert(q.root(obj, 0, x)).second) {
                leg1_injective = false;
                break;
            }
        }
        if (!leg1_injective) break;
    }

    std::map<std::string, std::map<std::size_t, ElemId>> class_name;
    for (const auto& obj : base.objects()) {
        auto& names = class_name[obj];
        if (leg1_injective) {
            std::set<ElemId> taken;
            for (const auto& x : p1.elements(obj)) {
                names[q.root(obj, 0, x)] = x;
                taken.insert(x);
            }
            // p2-only classes, processed in lexicographic candidate order.
            std::vector<std::pair<ElemId, std::size_t>> fresh;
            for (const auto& x : p2.elements(obj)) {
                std::size_t root = q.root(obj, 1, x);
                if (!names.count(root)) fresh.emplace_back(x, root);
            }
            std::sort(fresh.begin(), fresh.end());
            std::set<std::size_t> named;
            for (const auto& [candidate, root] : fresh) {
                if (!named.insert(root).second) continue;
                ElemId name = candidate;
                while (taken.count(name)) name += "'";
                taken.insert(name);
                names[root] = name;
            }
        } else {
            // Fall back to least tagged foot member; every class contains a
            // foot element because span elements map into both feet.
            for (std::size_t node : {std::size_t{0}, std::size_t{1}}) {
                for (const auto& x : d.nodes[node].elements(obj)) {
                    std::size_t root = q.root(obj, node, x);
                    std::string candidate = tagged(node, x);
                    auto it = names.find(root);
                    if (it == names.end() || candidate < it->second) names[root] = candidate;
                }
            }
        }
    }

    Presheaf apex(p1.base_ptr());
    for (const auto& obj : base.objects()) {
        std::vector<ElemId> names;
        for (const auto& [root, name] : class_name.at(obj)) names.push_back(name);
        std::sort(names.begin(), names.end());
        for (const auto& n : names) apex.add_element(obj, n);
    }
    for (const auto& gen : base.generators()) {
        std::map<ElemId, ElemId> assigned;
        for (std::size_t node : {std::size_t{0}, std::size_t{1}}) {
            for (const auto& x : d.nodes[node].elements(gen.dst)) {
                const ElemId& from = class_name.at(gen.dst).at(q.root(gen.dst, node, x));
                const ElemId to = class_name.at(gen.src)
                                      .at(q.root(gen.src, node, d.nodes[node].act(gen.name, x)));
                auto it = assigned.find(from);
                if (it == assigned.end()) {
                    assigned[from] = to;
                    apex.set_action(gen.name, from, to);
                } else {
                    assert(it->second == to && "induced pushout action conflict");
                }
            }
        }
    }

    GeneralizedPushoutResult out;
    out.leg1 = PresheafMorphism(p1, apex);
    out.leg2 = PresheafMorphism(p2, apex);
    for (const auto& obj : base.objects()) {
        for (const auto& x : p1.elements(obj)) {
            out.leg1.set(obj, x, class_name.at(obj).at(q.root(obj, 0, x)));
        }
        for (const auto& x : p2.elements(obj)) {
            out.leg2.set(obj, x, class_name.at(obj).at(q.root(obj, 1, x)));
        }
    }
    out.apex = std::move(apex);
    return out;
}

PresheafMorphism mediating(const Cocone& universal, const Cocone& other) {
    PresheafMorphism u(universal.apex, other.apex);
    const BaseCategory& base = universal.apex.base();
    std::map<std::string, std::map<ElemId, ElemId>> assigned;
    for (std::size_t i = 0; i < universal.diagram.nodes.size(); ++i) {
        for (const auto& obj : base.objects()) {
            for (const auto& x : universal.diagram.nodes[i].elements(obj)) {
                const ElemId& from = universal.legs[i].apply(obj, x);
                const ElemId& to = other.legs[i].apply(obj, x);
                auto it = assigned[obj].find(from);
                if (it == assigned[obj].end()) {
                    assigned[obj][from] = to;
                    u.set(obj, from, to);
                } else {
                    assert(it->second == to && "mediating is ill-defined: other is not a cocone");
                }
            }
        }
    }
    return u;
}

} // namespace gt
