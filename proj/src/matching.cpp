#include "gt/matching.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gt {

namespace {

struct PatternElem {
    std::string obj;
    ElemId id;
};

// Assignment order: most-constrained object first (objects reached by more
// generators come earlier), refined by walking action adjacency so that
// each element is placed next to an already-ordered neighbour whenever
// possible. The order only affects search speed; results are normalized.
std::vector<PatternElem> assignment_order(const Presheaf& pattern) {
    const BaseCategory& base = pattern.base();
    std::vector<std::string> objs = base.objects();
    std::stable_sort(objs.begin(), objs.end(), [&](const std::string& a, const std::string& b) {
        auto weight = [&](const std::string& o) {
            return base.generators_into(o).size() * 2 + base.generators_out_of(o).size();
        };
        return weight(a) > weight(b);
    });

    std::set<std::pair<std::string, ElemId>> placed;
    std::vector<PatternElem> order;
    auto place = [&](const std::string& obj, const ElemId& x) {
        if (placed.insert({obj, x}).second) order.push_back({obj, x});
    };
    // Neighbourhood walk: placing an element over dst(m) pulls in its
    // action image over src(m), and conversely.
    auto expand = [&](std::size_t start) {
        for (std::size_t i = start; i < order.size(); ++i) {
            PatternElem cur = order[i];
            for (const auto& gen : base.generators()) {
                if (gen.dst == cur.obj) place(gen.src, pattern.act(gen.name, cur.id));
                if (gen.src == cur.obj) {
                    for (const auto& [from, to] : pattern.action(gen.name)) {
                        if (to == cur.id) place(gen.dst, from);
                    }
                }
            }
        }
    };
    for (const auto& obj : objs) {
        for (const auto& x : pattern.elements(obj)) {
            std::size_t before = order.size();
            place(obj, x);
            if (order.size() != before) expand(before);
        }
    }
    return order;
}

// Stable colors per element under iterated neighbourhood refinement, with
// one dictionary shared between two presheaves so colors are comparable.
// Isomorphisms preserve colors, so color-equal filtering is sound for the
// bijective search.
struct ColorRefinement {
    std::map<std::pair<std::string, ElemId>, int> left;
    std::map<std::pair<std::string, ElemId>, int> right;

    ColorRefinement(const Presheaf& p, const Presheaf& q) {
        const BaseCategory& base = p.base();
        auto init = [&](const Presheaf& x, std::map<std::pair<std::string, ElemId>, int>& out) {
            for (const auto& obj : base.objects()) {
                int tag = static_cast<int>(
                    std::find(base.objects().begin(), base.objects().end(), obj) -
                    base.objects().begin());
                for (const auto& e : x.elements(obj)) out[{obj, e}] = tag;
            }
        };
        init(p, left);
        init(q, right);

        const std::size_t rounds = p.total_elements() + q.total_elements();
        for (std::size_t r = 0; r < rounds; ++r) {
            std::map<std::string, int> dictionary;
            auto refine = [&](const Presheaf& x,
                              const std::map<std::pair<std::string, ElemId>, int>& old,
                              std::map<std::pair<std::string, ElemId>, int>& fresh) {
                for (const auto& obj : base.objects()) {
                    for (const auto& e : x.elements(obj)) {
                        std::string sig = std::to_string(old.at({obj, e}));
                        for (const auto& gen : base.generators()) {
                            if (gen.dst == obj) {
                                sig += "|" + gen.name + ">" +
                                       std::to_string(old.at({gen.src, x.act(gen.name, e)}));
                            }
                            if (gen.src == obj) {
                                std::vector<int> incoming;
                                for (const auto& [from, to] : x.action(gen.name)) {
                                    if (to == e) incoming.push_back(old.at({gen.dst, from}));
                                }
                                std::sort(incoming.begin(), incoming.end());
                                sig += "|" + gen.name + "<";
                                for (int c : incoming) sig += std::to_string(c) + ",";
                            }
                        }
                        auto it = dictionary.find(sig);
                        if (it == dictionary.end()) {
                            it = dictionary.emplace(sig, static_cast<int>(dictionary.size())).first;
                        }
                        fresh[{obj, e}] = it->second;
                    }
                }
            };
            std::map<std::pair<std::string, ElemId>, int> new_left, new_right;
            refine(p, left, new_left);
            refine(q, right, new_right);
            if (new_left == left && new_right == right) break;
            left = std::move(new_left);
            right = std::move(new_right);
        }
    }

    // Color histograms per object must agree for an isomorphism to exist.
    bool histograms_match(const Presheaf& p, const Presheaf& q) const {
        std::map<std::pair<std::string, int>, int> hl, hr;
        for (const auto& [key, c] : left) hl[{key.first, c}] += 1;
        for (const auto& [key, c] : right) hr[{key.first, c}] += 1;
        return hl == hr;
    }
};

struct Search {
    const Presheaf& pattern;
    const Presheaf& target;
    std::vector<PatternElem> order;
    std::map<std::string, std::map<ElemId, ElemId>> assigned;
    std::map<std::string, std::set<ElemId>> used; // injectivity per object
    bool first_only = false;
    const ColorRefinement* colors = nullptr; // exact-color filter (iso search)
    std::vector<PresheafMorphism> results;

    // Pattern constraint adjacency and target preimage buckets, built once
    // so candidate generation and consistency checks stay local.
    // outgoing[obj][x]: (gen, act_gen(x)); incoming[obj][x]: (gen, w) with
    // act_gen(w) = x; buckets[gen][y]: target elements whose action is y.
    std::map<std::string, std::map<ElemId, std::vector<std::pair<std::string, ElemId>>>> outgoing;
    std::map<std::string, std::map<ElemId, std::vector<std::pair<std::string, ElemId>>>> incoming;
    std::map<std::string, std::map<ElemId, std::vector<ElemId>>> buckets;

    // Twin class of each target element: elements of an object nothing
    // acts into, with identical action images, are freely interchangeable
    // by an automorphism of the target.
    std::map<std::string, std::map<ElemId, int>> twin_class;

    Search(const Presheaf& pat, const Presheaf& tgt) : pattern(pat), target(tgt) {
        order = assignment_order(pat);
        for (const auto& gen : pattern.base().generators()) {
            for (const auto& [from, to] : pattern.action(gen.name)) {
                outgoing[gen.dst][from].emplace_back(gen.name, to);
                incoming[gen.src][to].emplace_back(gen.name, from);
            }
            for (const auto& [from, to] : target.action(gen.name)) {
                buckets[gen.name][to].push_back(from);
            }
        }
        int next_class = 0;
        for (const auto& obj : target.base().objects()) {
            bool acted_into = false;
            for (const auto& gen : target.base().generators()) {
                if (gen.src == obj) acted_into = true;
            }
            std::map<std::string, int> by_key;
            for (const auto& y : target.elements(obj)) {
                if (acted_into) {
                    twin_class[obj][y] = next_class++;
                    continue;
                }
                std::string key;
                for (const auto& gen : target.base().generators()) {
                    if (gen.dst == obj) key += gen.name + ">" + target.act(gen.name, y) + ";";
                }
                auto it = by_key.find(key);
                if (it == by_key.end()) it = by_key.emplace(key, next_class++).first;
                twin_class[obj][y] = it->second;
            }
        }
    }

    const ElemId* lookup(const std::string& obj, const ElemId& x) const {
        auto oit = assigned.find(obj);
        if (oit == assigned.end()) return nullptr;
        auto it = oit->second.find(x);
        return it == oit->second.end() ? nullptr : &it->second;
    }

    bool consistent(const PatternElem& el, const ElemId& candidate) const {
        auto oit = outgoing.find(el.obj);
        if (oit != outgoing.end()) {
            auto eit = oit->second.find(el.id);
            if (eit != oit->second.end()) {
                for (const auto& [gen, img] : eit->second) {
                    const Generator& g = pattern.base().generator(gen);
                    if (const ElemId* y = lookup(g.src, img)) {
                        if (target.act(gen, candidate) != *y) return false;
                    }
                }
            }
        }
        auto iit = incoming.find(el.obj);
        if (iit != incoming.end()) {
            auto eit = iit->second.find(el.id);
            if (eit != iit->second.end()) {
                for (const auto& [gen, from] : eit->second) {
                    const Generator& g = pattern.base().generator(gen);
                    if (const ElemId* w = lookup(g.dst, from)) {
                        if (target.act(gen, *w) != candidate) return false;
                    }
                }
            }
        }
        return true;
    }

    // Candidates for `el`: the forced image when an acting neighbour is
    // assigned, the preimage bucket of an assigned action image, or the
    // whole unused carrier.
    std::vector<ElemId> candidates(const PatternElem& el) const {
        auto iit = incoming.find(el.obj);
        if (iit != incoming.end()) {
            auto eit = iit->second.find(el.id);
            if (eit != iit->second.end()) {
                for (const auto& [gen, from] : eit->second) {
                    const Generator& g = pattern.base().generator(gen);
                    if (const ElemId* w = lookup(g.dst, from)) return {target.act(gen, *w)};
                }
            }
        }
        auto oit = outgoing.find(el.obj);
        if (oit != outgoing.end()) {
            auto eit = oit->second.find(el.id);
            if (eit != oit->second.end()) {
                for (const auto& [gen, img] : eit->second) {
                    const Generator& g = pattern.base().generator(gen);
                    if (const ElemId* y = lookup(g.src, img)) {
                        auto bit = buckets.find(gen);
                        if (bit == buckets.end()) return {};
                        auto vit = bit->second.find(*y);
                        if (vit == bit->second.end()) return {};
                        return vit->second;
                    }
                }
            }
        }
        std::vector<ElemId> out;
        auto uit = used.find(el.obj);
        for (const auto& y : target.elements(el.obj)) {
            if (uit != used.end() && uit->second.count(y)) continue;
            out.push_back(y);
        }
        return out;
    }

    std::vector<ElemId> live_candidates(const PatternElem& el) const {
        std::vector<ElemId> out;
        for (const ElemId& y : candidates(el)) {
            if (used.count(el.obj) && used.at(el.obj).count(y)) continue;
            if (!target.has_element(el.obj, y)) continue;
            if (colors &&
                colors->left.at({el.obj, el.id}) != colors->right.at({el.obj, y})) {
                continue;
            }
            if (!consistent(el, y)) continue;
            out.push_back(y);
        }
        return out;
    }

    bool is_assigned(const PatternElem& el) const {
        auto it = assigned.find(el.obj);
        return it != assigned.end() && it->second.count(el.id) != 0;
    }

    // Dynamic most-constrained-first: each node assigns the element with
    // the fewest live candidates, so forced placements propagate at once
    // and dead ends surface as an empty candidate set.
    void run(std::size_t placed) {
        if (placed == order.size()) {
            PresheafMorphism m(pattern, target);
            for (const auto& [obj, comp] : assigned) {
                for (const auto& [from, to] : comp) m.set(obj, from, to);
            }
            results.push_back(std::move(m));
            return;
        }
        const PatternElem* best = nullptr;
        std::vector<ElemId> best_candidates;
        for (const PatternElem& el : order) {
            if (is_assigned(el)) continue;
            std::vector<ElemId> cs = live_candidates(el);
            if (cs.empty()) return; // some element can no longer be placed
            if (!best || cs.size() < best_candidates.size()) {
                best = &el;
                best_candidates = std::move(cs);
                if (best_candidates.size() == 1) break;
            }
        }
        const PatternElem& el = *best;
        std::set<int> failed_twins;
        for (const ElemId& y : best_candidates) {
            // For a first-match search, a candidate twin-equivalent to one
            // that already failed here cannot succeed either: the swap
            // automorphism would carry its completion to the failed one.
            int twin = twin_class.at(el.obj).at(y);
            if (first_only && failed_twins.count(twin)) continue;
            assigned[el.obj][el.id] = y;
            used[el.obj].insert(y);
            run(placed + 1);
            assigned[el.obj].erase(el.id);
            used[el.obj].erase(y);
            if (first_only && !results.empty()) return;
            failed_twins.insert(twin);
        }
    }
};

void normalize(std::vector<PresheafMorphism>& monos) {
    std::sort(monos.begin(), monos.end(), [](const PresheafMorphism& a, const PresheafMorphism& b) {
        return a.serialized_components() < b.serialized_components();
    });
}

} // namespace

std::vector<PresheafMorphism> find_monos(const Presheaf& pattern, const Presheaf& target) {
    if (!(pattern.base() == target.base())) {
        throw std::invalid_argument("find_monos: pattern and target over different bases");
    }
    Search s(pattern, target);
    s.run(0);
    normalize(s.results);
    return s.results;
}

std::vector<PresheafMorphism> extend_mono(const PresheafMorphism& e_l,
                                          const PresheafMorphism& f) {
    if (!e_l.source().same_presentation(f.source())) {
        throw std::invalid_argument("extend_mono: e_l and f must share their source");
    }
    Search s(e_l.target(), f.target());
    // Seed with the forced images of everything in the image of e_l.
    for (const auto& obj : e_l.source().base().objects()) {
        for (const auto& x : e_l.source().elements(obj)) {
            const ElemId& via = e_l.apply(obj, x);
            const ElemId& to = f.apply(obj, x);
            auto it = s.assigned[obj].find(via);
            if (it != s.assigned[obj].end()) {
                if (it->second != to) return {}; // e_l not injective towards f: no extension
            } else {
                if (s.used[obj].count(to)) return {};
                s.assigned[obj][via] = to;
                s.used[obj].insert(to);
            }
        }
    }
    // Seeded slots must still satisfy naturality among themselves.
    for (const auto& gen : e_l.target().base().generators()) {
        for (const auto& [from, to] : s.assigned[gen.dst]) {
            const ElemId& img = e_l.target().act(gen.name, from);
            auto it = s.assigned[gen.src].find(img);
            if (it != s.assigned[gen.src].end() &&
                f.target().act(gen.name, to) != it->second) {
                return {};
            }
        }
    }
    // Only search the unseeded elements.
    std::vector<PatternElem> remaining;
    for (const auto& el : s.order) {
        if (!s.assigned[el.obj].count(el.id)) remaining.push_back(el);
    }
    s.order = std::move(remaining);
    s.run(0);
    normalize(s.results);
    return s.results;
}

std::optional<PresheafMorphism> is_isomorphic(const Presheaf& p, const Presheaf& q) {
    if (!(p.base() == q.base())) {
        throw std::invalid_argument("is_isomorphic: presheaves over different bases");
    }
    for (const auto& obj : p.base().objects()) {
        if (p.elements(obj).size() != q.elements(obj).size()) return std::nullopt;
    }
    ColorRefinement colors(p, q);
    if (!colors.histograms_match(p, q)) return std::nullopt;
    // Equal finite carriers make any mono componentwise bijective.
    Search s(p, q);
    s.first_only = true;
    s.colors = &colors;
    s.run(0);
    if (s.results.empty()) return std::nullopt;
    return s.results.front();
}

} // namespace gt
