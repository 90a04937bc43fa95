#include "gt/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace gt {

bool instance_equal(const Instance& a, const Instance& b) {
    return a.rule == b.rule && morphism_equal(a.match, b.match);
}

Instance canonical_instance(const RuleSystem& rs, const Instance& inst) {
    Instance best = inst;
    std::string best_key = inst.key();
    for (std::size_t idx : rs.closure_into(inst.rule)) {
        const ClosureMember& m = rs.closure()[idx];
        if (!m.is_iso || m.is_identity) continue;
        Instance mate{m.src, compose(m.lhs_map, inst.match)};
        std::string key = mate.key();
        if (key < best_key) {
            best = std::move(mate);
            best_key = std::move(key);
        }
    }
    return best;
}

std::vector<std::pair<Instance, std::size_t>> sub_instances(const RuleSystem& rs,
                                                            const Instance& m) {
    std::vector<std::pair<Instance, std::size_t>> out;
    std::set<std::string> seen;
    for (std::size_t idx : rs.closure_into(m.rule)) {
        const ClosureMember& cm = rs.closure()[idx];
        Instance sub{cm.src, compose(cm.lhs_map, m.match)};
        if (!instance_equal(sub, canonical_instance(rs, sub))) continue;
        if (!seen.insert(sub.key()).second) {
            // Thinness (at most one comma morphism between instances) makes
            // a second witness impossible.
            throw std::logic_error("two comma morphisms between the same instances");
        }
        out.emplace_back(std::move(sub), idx);
    }
    return out;
}

std::vector<std::pair<Instance, std::size_t>> super_instances(const RuleSystem& rs,
                                                              const Presheaf& p,
                                                              const Instance& n) {
    std::vector<std::pair<Instance, std::size_t>> out;
    std::set<std::string> seen;
    for (std::size_t idx : rs.closure_from(n.rule)) {
        const ClosureMember& cm = rs.closure()[idx];
        for (const auto& extension : extend_mono(cm.lhs_map, n.match)) {
            Instance super = canonical_instance(rs, Instance{cm.dst, extension});
            if (!seen.insert(super.key()).second) continue;
            // The witnessing comma morphism from n to the canonical
            // representative; unique by thinness.
            std::optional<std::size_t> witness;
            for (std::size_t widx : rs.closure_from(n.rule)) {
                const ClosureMember& wm = rs.closure()[widx];
                if (wm.dst != super.rule) continue;
                if (morphism_equal(compose(wm.lhs_map, super.match), n.match)) {
                    witness = widx;
                    break;
                }
            }
            if (!witness) throw std::logic_error("no comma morphism to a canonical super-instance");
            out.emplace_back(std::move(super), *witness);
        }
    }
    return out;
}

bool is_maximal(const RuleSystem& rs, const Presheaf& p, const Instance& n) {
    for (std::size_t idx : rs.closure_from(n.rule)) {
        const ClosureMember& cm = rs.closure()[idx];
        if (cm.is_iso) continue;
        if (!extend_mono(cm.lhs_map, n.match).empty()) return false;
    }
    return true;
}

std::optional<Instance> find_any_minimal(
    const RuleSystem& rs, const Presheaf& p,
    const std::function<bool(const Instance&)>& excluded) {
    for (std::size_t r : rs.minimal_rules()) {
        for (const auto& match : find_monos(rs.rule(r).lhs, p)) {
            Instance inst = canonical_instance(rs, Instance{r, match});
            if (excluded && excluded(inst)) continue;
            return inst;
        }
    }
    return std::nullopt;
}

namespace {

// One run of the online algorithm over a single connected component of the
// instance category.
class ComponentRun {
public:
    ComponentRun(const RuleSystem& rs, const Presheaf& p, const OnlineOptions& opts,
                 std::set<std::string>& visited, OnlineResult& stats)
        : rs_(rs), p_(p), opts_(opts), visited_(visited), stats_(stats) {}

    Presheaf run(const Instance& seed) {
        result_ = rs_.rule(seed.rule).rhs;
        enqueue(seed, identity_morphism(result_));

        while (!queue_.empty()) {
            const std::string head = queue_.front();
            if (dropped_.count(head)) {
                queue_.pop_front();
                continue;
            }
            process_head(head);
            // All of the head's maximal super-instances are processed now.
            drop(head);
            queue_.pop_front();
            if (opts_.check_queue_invariant) check_invariant();
        }
        return std::move(result_);
    }

private:
    struct Entry {
        Instance inst;
        std::vector<std::pair<Instance, std::size_t>> maximal_supers;
        std::size_t pending = 0; // maximal supers not yet processed
    };

    bool maximal(const Instance& i) {
        auto it = maximal_memo_.find(i.key());
        if (it != maximal_memo_.end()) return it->second;
        bool m = is_maximal(rs_, p_, i);
        maximal_memo_[i.key()] = m;
        return m;
    }

    void enqueue(const Instance& n, PresheafMorphism into_result) {
        Entry entry;
        entry.inst = n;
        for (auto& [m, e] : super_instances(rs_, p_, n)) {
            if (!maximal(m)) continue;
            if (!processed_.count({n.key(), m.key()})) entry.pending += 1;
            entry.maximal_supers.emplace_back(std::move(m), e);
        }
        cocone_.emplace(n.key(), std::move(into_result));
        queue_.push_back(n.key());
        visited_.insert(n.key());
        entries_.emplace(n.key(), std::move(entry));
        stats_.max_queue = std::max(stats_.max_queue, live_count());
    }

    void drop(const std::string& key) {
        dropped_.insert(key);
        cocone_.erase(key);
        for (auto it = processed_.begin(); it != processed_.end();) {
            it = it->first == key ? processed_.erase(it) : std::next(it);
        }
        entries_.erase(key);
    }

    void note_processed(const std::string& sub_key, const std::string& max_key,
                        const std::string& head) {
        if (!processed_.insert({sub_key, max_key}).second) return;
        auto it = entries_.find(sub_key);
        if (it == entries_.end()) return;
        if (it->second.pending > 0) it->second.pending -= 1;
        // Exhausted instances can never appear in a later suture; dropping
        // them right away keeps only the live frontier in memory.
        if (it->second.pending == 0 && sub_key != head) drop(sub_key);
    }

    void process_head(const std::string& head) {
        // Copy: the entry map is modified while maximals are processed.
        const std::vector<std::pair<Instance, std::size_t>> supers =
            entries_.at(head).maximal_supers;
        for (const auto& [m, e_to_m] : supers) {
            if (processed_.count({head, m.key()})) continue;
            amalgamate(head, m);
        }
    }

    void amalgamate(const std::string& head, const Instance& m) {
        const Presheaf& rhs_m = rs_.rule(m.rule).rhs;
        std::vector<std::pair<Instance, std::size_t>> subs = sub_instances(rs_, m);
        std::vector<Span> suture;
        for (const auto& [n2, e2] : subs) {
            if (instance_equal(n2, m)) continue;
            const std::string key = n2.key();
            if (dropped_.count(key)) {
                throw std::logic_error("dropped instance resurfaced in a suture");
            }
            auto it = cocone_.find(key);
            if (it == cocone_.end()) continue;
            suture.push_back(Span{rs_.rule(n2.rule).rhs, it->second, rs_.closure()[e2].rhs_map});
        }

        GeneralizedPushoutResult po = generalized_pushout(result_, rhs_m, suture);
        stats_.pushouts += 1;
        if (!is_mono(po.leg1)) stats_.nonmono_inclusions += 1;

        // Retained legs follow the result through the first pushout leg;
        // newly discovered sub-instances enter through the second.
        for (auto& [key, mor] : cocone_) mor = compose(mor, po.leg1);
        result_ = std::move(po.apex);
        visited_.insert(m.key());
        for (const auto& [n2, e2] : subs) {
            if (instance_equal(n2, m)) continue;
            if (!cocone_.count(n2.key()) && !dropped_.count(n2.key())) {
                enqueue(n2, compose(rs_.closure()[e2].rhs_map, po.leg2));
            }
        }
        for (const auto& [n2, e2] : subs) {
            if (instance_equal(n2, m)) continue;
            note_processed(n2.key(), m.key(), head);
        }
    }

    std::size_t live_count() const { return entries_.size(); }

    void check_invariant() {
        // Every retained instance still waits on some maximal, checked
        // against a fresh recomputation.
        for (const auto& [key, entry] : entries_) {
            std::size_t pending = 0;
            for (const auto& [m, e] : super_instances(rs_, p_, entry.inst)) {
                if (!is_maximal(rs_, p_, m)) continue;
                if (!processed_.count({key, m.key()})) pending += 1;
            }
            if (pending == 0 || pending != entry.pending) {
                throw std::logic_error("queue retains an exhausted instance");
            }
        }
    }

    const RuleSystem& rs_;
    const Presheaf& p_;
    const OnlineOptions& opts_;
    std::set<std::string>& visited_;
    OnlineResult& stats_;

    Presheaf result_;
    std::deque<std::string> queue_;
    std::map<std::string, Entry> entries_;
    std::map<std::string, PresheafMorphism> cocone_;
    std::set<std::pair<std::string, std::string>> processed_;
    std::set<std::string> dropped_;
    std::map<std::string, bool> maximal_memo_;
};

} // namespace

OnlineResult online_step(const RuleSystem& rs, const Presheaf& p, OnlineOptions opts) {
    OnlineResult res;
    std::set<std::string> visited; // canonical instance keys across components
    std::vector<Presheaf> component_results;

    while (true) {
        std::optional<Instance> seed = find_any_minimal(
            rs, p, [&](const Instance& i) { return visited.count(i.key()) != 0; });
        if (!seed) break;
        res.components += 1;
        visited.insert(seed->key());

        if (is_maximal(rs, p, *seed)) {
            // Single-instance component: the step is the rhs itself.
            component_results.push_back(rs.rule(seed->rule).rhs);
            continue;
        }
        ComponentRun run(rs, p, opts, visited, res);
        component_results.push_back(run.run(*seed));
    }

    if (component_results.empty()) {
        res.result = Presheaf(rs.base_ptr());
    } else if (component_results.size() == 1) {
        res.result = std::move(component_results.front());
    } else {
        res.result = disjoint_union(component_results).first;
    }
    return res;
}

BatchResult batch_step(const RuleSystem& rs, const Presheaf& p) {
    BatchResult out;
    for (std::size_t r = 0; r < rs.rules().size(); ++r) {
        for (const auto& match : find_monos(rs.rule(r).lhs, p)) {
            out.instances.push_back(Instance{r, match});
        }
    }

    Diagram d;
    for (const auto& inst : out.instances) d.nodes.push_back(rs.rule(inst.rule).rhs);
    for (std::size_t a = 0; a < out.instances.size(); ++a) {
        for (std::size_t b = 0; b < out.instances.size(); ++b) {
            const Instance& na = out.instances[a];
            const Instance& nb = out.instances[b];
            std::size_t found = 0;
            for (std::size_t idx : rs.closure_from(na.rule)) {
                const ClosureMember& cm = rs.closure()[idx];
                if (cm.dst != nb.rule) continue;
                if (!morphism_equal(compose(cm.lhs_map, nb.match), na.match)) continue;
                found += 1;
                if (a == b && cm.is_identity) continue; // identity arrows add nothing
                d.arrows.push_back({a, b, cm.rhs_map});
            }
            // Thinness of the instance category (the lhs functor is a full
            // embedding): at most one comma morphism between two instances.
            if (found > 1) throw std::logic_error("thinness violated in the instance category");
        }
    }

    if (out.instances.empty()) {
        out.cocone = Cocone{std::move(d), Presheaf(rs.base_ptr()), {}};
        return out;
    }
    out.cocone = colimit_of_diagram(d);
    return out;
}

PresheafMorphism transport(const RuleSystem& rs, const PresheafMorphism& h) {
    if (!is_mono(h)) throw std::invalid_argument("transport expects a monomorphism");
    BatchResult before = batch_step(rs, h.source());
    BatchResult after = batch_step(rs, h.target());

    // Re-index each instance of the source along h and take the target's
    // cocone legs there.
    Cocone restricted;
    restricted.diagram = before.cocone.diagram;
    restricted.apex = after.cocone.apex;
    for (const auto& inst : before.instances) {
        Instance image{inst.rule, compose(inst.match, h)};
        std::optional<std::size_t> pos;
        for (std::size_t j = 0; j < after.instances.size(); ++j) {
            if (instance_equal(after.instances[j], image)) {
                pos = j;
                break;
            }
        }
        if (!pos) throw std::logic_error("instance image missing from the target decomposition");
        restricted.legs.push_back(after.cocone.legs[*pos]);
    }
    if (before.instances.empty()) {
        // Empty decomposition: the unique morphism from the empty presheaf.
        return PresheafMorphism(before.cocone.apex, after.cocone.apex);
    }
    return mediating(before.cocone, restricted);
}

Presheaf iterate(const RuleSystem& rs, const Presheaf& p, std::size_t k,
                 OnlineResult* stats) {
    Presheaf current = p;
    for (std::size_t i = 0; i < k; ++i) {
        OnlineResult step = online_step(rs, current);
        current = step.result;
        if (stats) {
            stats->pushouts += step.pushouts;
            stats->nonmono_inclusions += step.nonmono_inclusions;
            stats->components += step.components;
            stats->max_queue = std::max(stats->max_queue, step.max_queue);
        }
    }
    if (stats) stats->result = current;
    return current;
}

} // namespace gt
