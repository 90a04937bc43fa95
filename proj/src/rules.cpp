#include "gt/rules.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gt {

InvalidRuleSystem::InvalidRuleSystem(const FunctorialityError& err)
    : std::runtime_error("rule system is not functorial: inclusions " + err.witness1 + " and " +
                         err.witness2 + " from " + err.rule_src + " to " + err.rule_dst +
                         " share lhs components but differ on rhs"),
      error(err) {}

RuleSystem::RuleSystem(std::shared_ptr<const BaseCategory> base, std::vector<Rule> rules,
                       std::vector<RuleInclusion> inclusions)
    : base_(std::move(base)), rules_(std::move(rules)), inclusions_(std::move(inclusions)) {
    std::set<std::string> ids;
    for (const auto& r : rules_) {
        if (!ids.insert(r.id).second) {
            throw std::invalid_argument("duplicate rule id: " + r.id);
        }
    }
}

std::size_t RuleSystem::rule_index(const std::string& id) const {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i].id == id) return i;
    }
    throw std::out_of_range("unknown rule id: " + id);
}

namespace {

std::string member_key(const ClosureMember& m) {
    return std::to_string(m.src) + ">" + std::to_string(m.dst) + ":" +
           m.lhs_map.serialized_components();
}

} // namespace

void RuleSystem::compute_closure() const {
    std::vector<ClosureMember> members;
    std::map<std::string, std::size_t> seen; // keyed on (src, dst, lhs components)

    auto add = [&](ClosureMember m) -> bool {
        const std::string key = member_key(m);
        auto it = seen.find(key);
        if (it != seen.end()) {
            // L is an embedding, so lhs components determine the morphism;
            // a differing rhs means R cannot be a functor.
            if (!morphism_equal(members[it->second].rhs_map, m.rhs_map)) {
                throw InvalidRuleSystem({rules_[m.src].id, rules_[m.dst].id,
                                         members[it->second].label, m.label});
            }
            return false;
        }
        seen[key] = members.size();
        members.push_back(std::move(m));
        return true;
    };

    for (std::size_t i = 0; i < rules_.size(); ++i) {
        add({i, i, identity_morphism(rules_[i].lhs), identity_morphism(rules_[i].rhs),
             "id:" + rules_[i].id, true, true});
    }
    for (const auto& inc : inclusions_) {
        add({rule_index(inc.src), rule_index(inc.dst), inc.lhs_map, inc.rhs_map, inc.id, false,
             false});
    }

    // Fixpoint over composition; terminates because there are finitely many
    // component families between finite presheaves.
    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t count = members.size();
        for (std::size_t a = 0; a < count; ++a) {
            for (std::size_t b = 0; b < count; ++b) {
                if (members[a].dst != members[b].src) continue;
                if (members[a].is_identity || members[b].is_identity) continue;
                ClosureMember m{members[a].src, members[b].dst,
                                compose(members[a].lhs_map, members[b].lhs_map),
                                compose(members[a].rhs_map, members[b].rhs_map),
                                members[b].label + "*" + members[a].label, false, false};
                if (add(std::move(m))) changed = true;
            }
        }
    }

    // Deterministic order: by source rule, destination rule, lhs components.
    std::sort(members.begin(), members.end(), [](const ClosureMember& a, const ClosureMember& b) {
        return member_key(a) < member_key(b);
    });

    // Mark invertible members: m is iso when some member composes with it to
    // the identity on both sides.
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].is_identity) {
            members[i].is_iso = true;
            continue;
        }
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (members[j].src != members[i].dst || members[j].dst != members[i].src) continue;
            if (morphism_equal(compose(members[i].lhs_map, members[j].lhs_map),
                               identity_morphism(rules_[members[i].src].lhs)) &&
                morphism_equal(compose(members[j].lhs_map, members[i].lhs_map),
                               identity_morphism(rules_[members[i].dst].lhs))) {
                members[i].is_iso = true;
                break;
            }
        }
    }

    closure_ = std::move(members);
    from_.assign(rules_.size(), {});
    into_.assign(rules_.size(), {});
    for (std::size_t i = 0; i < closure_.size(); ++i) {
        from_[closure_[i].src].push_back(i);
        into_[closure_[i].dst].push_back(i);
    }
    closed_ = true;
}

const std::vector<ClosureMember>& RuleSystem::closure() const {
    if (!closed_) compute_closure();
    return closure_;
}

std::vector<std::size_t> RuleSystem::closure_from(std::size_t rule) const {
    closure();
    return from_.at(rule);
}

std::vector<std::size_t> RuleSystem::closure_into(std::size_t rule) const {
    closure();
    return into_.at(rule);
}

std::vector<std::size_t> RuleSystem::minimal_rules() const {
    closure();
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        bool minimal = true;
        for (std::size_t idx : into_[r]) {
            if (!closure_[idx].is_iso) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(r);
    }
    return out;
}

RuleSystemReport validate_rule_system(const RuleSystem& rs) {
    RuleSystemReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.errors.push_back(msg);
    };

    for (const auto& r : rs.rules()) {
        ValidationReport v = validate_presheaf(rs.base(), r.lhs);
        if (!v.ok()) fail("rule " + r.id + " lhs: " + v.message);
        v = validate_presheaf(rs.base(), r.rhs);
        if (!v.ok()) fail("rule " + r.id + " rhs: " + v.message);
        if (r.lhs.empty()) {
            fail("rule " + r.id + " has an empty lhs; it would match vacuously everywhere");
        }
    }

    for (const auto& inc : rs.inclusions()) {
        std::size_t src, dst;
        try {
            src = rs.rule_index(inc.src);
            dst = rs.rule_index(inc.dst);
        } catch (const std::out_of_range& e) {
            fail("inclusion " + inc.id + ": " + e.what());
            continue;
        }
        if (!inc.lhs_map.source().same_presentation(rs.rule(src).lhs) ||
            !inc.lhs_map.target().same_presentation(rs.rule(dst).lhs)) {
            fail("inclusion " + inc.id + ": lhs_map endpoints do not match the rules");
            continue;
        }
        if (!inc.rhs_map.source().same_presentation(rs.rule(src).rhs) ||
            !inc.rhs_map.target().same_presentation(rs.rule(dst).rhs)) {
            fail("inclusion " + inc.id + ": rhs_map endpoints do not match the rules");
            continue;
        }
        ValidationReport v = validate_morphism(inc.lhs_map);
        if (!v.ok()) fail("inclusion " + inc.id + " lhs_map: " + v.message);
        v = validate_morphism(inc.rhs_map);
        if (!v.ok()) fail("inclusion " + inc.id + " rhs_map: " + v.message);
        if (report.ok && !is_mono(inc.lhs_map)) {
            fail("inclusion " + inc.id + ": lhs_map must be a monomorphism");
        }
        if (report.ok && !is_mono(inc.rhs_map)) {
            report.warnings.push_back("inclusion " + inc.id + ": rhs_map is not a monomorphism");
        }
    }
    if (!report.ok) return report;

    try {
        rs.closure();
    } catch (const InvalidRuleSystem& e) {
        fail(e.what());
        return report;
    }

    // L-fullness: every mono between left-hand sides is the lhs component
    // of some closure member.
    for (std::size_t a = 0; a < rs.rules().size(); ++a) {
        for (std::size_t b = 0; b < rs.rules().size(); ++b) {
            std::vector<PresheafMorphism> monos = find_monos(rs.rule(a).lhs, rs.rule(b).lhs);
            for (const auto& m : monos) {
                bool covered = false;
                for (std::size_t idx : rs.closure_from(a)) {
                    const ClosureMember& cm = rs.closure()[idx];
                    if (cm.dst == b && morphism_equal(cm.lhs_map, m)) {
                        covered = true;
                        break;
                    }
                }
                if (!covered) {
                    fail("L-fullness: mono " + rs.rule(a).id + " -> " + rs.rule(b).id + " (" +
                         m.serialized_components() + ") has no declared rule inclusion");
                }
            }
        }
    }
    return report;
}

IncrementalityResult check_incremental(const RuleSystem& rs) {
    const auto& closure = rs.closure();
    for (std::size_t g = 0; g < rs.rules().size(); ++g) {
        for (std::size_t i1 : rs.closure_into(g)) {
            for (std::size_t i2 : rs.closure_into(g)) {
                const ClosureMember& m1 = closure[i1];
                const ClosureMember& m2 = closure[i2];
                for (const auto& obj : rs.base().objects()) {
                    for (const ElemId& x1 : rs.rule(m1.src).rhs.elements(obj)) {
                        for (const ElemId& x2 : rs.rule(m2.src).rhs.elements(obj)) {
                            if (m1.rhs_map.apply(obj, x1) != m2.rhs_map.apply(obj, x2)) continue;
                            // Search a common sub-rule factoring the overlap
                            // through a commuting square in the rule category.
                            bool witnessed = false;
                            for (std::size_t gp = 0; gp < rs.rules().size() && !witnessed; ++gp) {
                                for (std::size_t p1 : rs.closure_from(gp)) {
                                    if (closure[p1].dst != m1.src) continue;
                                    for (std::size_t p2 : rs.closure_from(gp)) {
                                        if (closure[p2].dst != m2.src) continue;
                                        if (!morphism_equal(
                                                compose(closure[p1].lhs_map, m1.lhs_map),
                                                compose(closure[p2].lhs_map, m2.lhs_map)) ||
                                            !morphism_equal(
                                                compose(closure[p1].rhs_map, m1.rhs_map),
                                                compose(closure[p2].rhs_map, m2.rhs_map))) {
                                            continue;
                                        }
                                        for (const ElemId& x : rs.rule(gp).rhs.elements(obj)) {
                                            if (closure[p1].rhs_map.apply(obj, x) == x1 &&
                                                closure[p2].rhs_map.apply(obj, x) == x2) {
                                                witnessed = true;
                                                break;
                                            }
                                        }
                                        if (witnessed) break;
                                    }
                                    if (witnessed) break;
                                }
                            }
                            if (!witnessed) {
                                return {false,
                                        IncrementalityCounterexample{
                                            rs.rule(g).id, m1.label, m2.label,
                                            rs.rule(m1.src).id, rs.rule(m2.src).id, obj, x1, x2}};
                            }
                        }
                    }
                }
            }
        }
    }
    return {};
}

} // namespace gt
