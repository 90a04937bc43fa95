#pragma once

#include "gt/colimit.hpp"
#include "gt/rules.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace gt {

// An occurrence of a rule in the input: the rule together with a mono from
// its lhs. Instances are compared by rule index and match components.
struct Instance {
    std::size_t rule = 0;
    PresheafMorphism match;

    std::string key() const {
        return std::to_string(rule) + ":" + match.serialized_components();
    }
};

bool instance_equal(const Instance& a, const Instance& b);

// Representative of the instance's isomorphism class: the least classmate
// reachable by precomposing the match with an invertible closure member.
Instance canonical_instance(const RuleSystem& rs, const Instance& inst);

// Sub-instances of m: one entry per closure member into m's rule, the
// instance being the composite match. Canonical representatives only; by
// thinness each distinct sub-instance appears with exactly one member.
// Includes m itself through its identity.
std::vector<std::pair<Instance, std::size_t>> sub_instances(const RuleSystem& rs,
                                                            const Instance& m);

// Super-instances of n in the given presheaf: canonical instances reached
// by extending the match along closure members out of n's rule, paired
// with the closure member witnessing the comma morphism from n. Includes n
// itself through its identity.
std::vector<std::pair<Instance, std::size_t>> super_instances(const RuleSystem& rs,
                                                              const Presheaf& p,
                                                              const Instance& n);

// No proper extension along any non-invertible closure member.
bool is_maximal(const RuleSystem& rs, const Presheaf& p, const Instance& n);

// First match of a minimal rule (deterministic rule order, lexicographic
// match order) whose canonical instance is not in `excluded`; nullopt when
// the presheaf admits no such match.
std::optional<Instance> find_any_minimal(
    const RuleSystem& rs, const Presheaf& p,
    const std::function<bool(const Instance&)>& excluded = {});

struct OnlineOptions {
    // Re-derive the retained-queue bookkeeping from scratch after every
    // drop and fail loudly on divergence. Test instrumentation.
    bool check_queue_invariant = false;
};

struct OnlineResult {
    Presheaf result;
    std::size_t pushouts = 0;
    std::size_t nonmono_inclusions = 0; // accretiveness violations observed
    std::size_t components = 0;
    std::size_t max_queue = 0;
};

// One synchronous step computed online: per connected component of the
// instance category, seed with a minimal instance and amalgamate the rhs
// of each newly discovered maximal instance by generalized pushout along
// the suture of shared sub-instances. Components are processed
// independently and recombined by disjoint union.
OnlineResult online_step(const RuleSystem& rs, const Presheaf& p, OnlineOptions opts = {});

struct BatchResult {
    std::vector<Instance> instances;
    Cocone cocone; // diagram nodes follow `instances`
};

// The whole-step colimit: materialize every instance and every comma
// morphism, map instances to their rhs and take the colimit. Works for any
// valid rule system; asserts thinness of the instance category.
BatchResult batch_step(const RuleSystem& rs, const Presheaf& p);

// Functorial action on a mono h : p -> p2: the mediating morphism from the
// batch colimit of p to the batch cocone of p2 restricted along h.
PresheafMorphism transport(const RuleSystem& rs, const PresheafMorphism& h);

// k-fold online step; k = 0 returns the input unchanged.
Presheaf iterate(const RuleSystem& rs, const Presheaf& p, std::size_t k,
                 OnlineResult* last_stats = nullptr);

} // namespace gt
