#pragma once

#include "gt/matching.hpp"
#include "gt/morphism.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gt {

struct Rule {
    std::string id;
    Presheaf lhs;
    Presheaf rhs;
};

// A declared rule inclusion: a mono between left-hand sides together with
// the corresponding morphism between right-hand sides.
struct RuleInclusion {
    std::string id;
    std::string src; // rule id
    std::string dst; // rule id
    PresheafMorphism lhs_map;
    PresheafMorphism rhs_map;
};

// A morphism of the closure of the rule category: identity, declared, or a
// composite. `label` records provenance for diagnostics.
struct ClosureMember {
    std::size_t src = 0; // rule index
    std::size_t dst = 0;
    PresheafMorphism lhs_map;
    PresheafMorphism rhs_map;
    std::string label;
    bool is_identity = false;
    bool is_iso = false;
};

struct FunctorialityError {
    std::string rule_src;
    std::string rule_dst;
    std::string witness1;
    std::string witness2;
};

class RuleSystem {
public:
    RuleSystem(std::shared_ptr<const BaseCategory> base, std::vector<Rule> rules,
               std::vector<RuleInclusion> inclusions);

    const std::shared_ptr<const BaseCategory>& base_ptr() const { return base_; }
    const BaseCategory& base() const { return *base_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<RuleInclusion>& inclusions() const { return inclusions_; }

    std::size_t rule_index(const std::string& id) const;
    const Rule& rule(std::size_t index) const { return rules_.at(index); }

    // Derived composition closure; computed on demand and cached. Throws
    // InvalidRuleSystem when two members share an lhs component family but
    // disagree on the rhs.
    const std::vector<ClosureMember>& closure() const;

    // Closure members with the given source / destination rule.
    std::vector<std::size_t> closure_from(std::size_t rule) const;
    std::vector<std::size_t> closure_into(std::size_t rule) const;

    // Rules with no incoming non-invertible closure member.
    std::vector<std::size_t> minimal_rules() const;

private:
    std::shared_ptr<const BaseCategory> base_;
    std::vector<Rule> rules_;
    std::vector<RuleInclusion> inclusions_;

    mutable bool closed_ = false;
    mutable std::vector<ClosureMember> closure_;
    mutable std::vector<std::vector<std::size_t>> from_, into_;

    void compute_closure() const;
};

class InvalidRuleSystem : public std::runtime_error {
public:
    explicit InvalidRuleSystem(const FunctorialityError& err);
    FunctorialityError error;
};

// Forces closure computation; surfaces the functoriality error as a report
// instead of an exception.
struct RuleSystemReport {
    bool ok = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

// Structural checks on rules and inclusions, closure functoriality, and
// L-fullness: every mono between left-hand sides found by pattern matching
// must be the lhs component of some closure member. Non-mono rhs maps are
// reported as warnings only.
RuleSystemReport validate_rule_system(const RuleSystem& rs);

// Witness that a rule system is not incremental: a cospan of closure
// members into `rule` whose rhs images overlap at (object, x1, x2) without
// a common sub-rule accounting for the overlap.
struct IncrementalityCounterexample {
    std::string rule;
    std::string i1_label;
    std::string i2_label;
    std::string i1_src;
    std::string i2_src;
    std::string object;
    ElemId x1;
    ElemId x2;
};

struct IncrementalityResult {
    bool incremental = true;
    std::optional<IncrementalityCounterexample> counterexample;
};

// Decides the incrementality criterion on the finite closure: every rhs
// overlap inside a super-rule must factor through a common sub-rule, the
// factorizing square commuting in the rule category. Returns the
// lexicographically first witness otherwise.
IncrementalityResult check_incremental(const RuleSystem& rs);

} // namespace gt
