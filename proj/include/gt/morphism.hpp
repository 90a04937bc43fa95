#pragma once

#include "gt/presheaf.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gt {

// A morphism of presheaves: one component map per object of the base,
// total on the source carrier and natural with respect to every generator.
// Monomorphism = every component injective.
class PresheafMorphism {
public:
    PresheafMorphism() = default;
    PresheafMorphism(Presheaf source, Presheaf target);

    const Presheaf& source() const { return source_; }
    const Presheaf& target() const { return target_; }

    const ElemId& apply(const std::string& obj, const ElemId& elem) const;
    void set(const std::string& obj, const ElemId& from, const ElemId& to);
    const std::map<std::string, std::map<ElemId, ElemId>>& components() const {
        return components_;
    }

    // Canonical textual form of the components, used for deterministic
    // ordering of search results.
    std::string serialized_components() const;

private:
    Presheaf source_;
    Presheaf target_;
    std::map<std::string, std::map<ElemId, ElemId>> components_;
};

PresheafMorphism identity_morphism(const Presheaf& p);

// Diagrammatic composition: apply f, then g. Requires f.target and
// g.source to present the same presheaf; throws std::invalid_argument
// otherwise.
PresheafMorphism compose(const PresheafMorphism& f, const PresheafMorphism& g);

// Pointwise equality of components; requires shared source and target.
bool morphism_equal(const PresheafMorphism& f, const PresheafMorphism& g);

bool is_mono(const PresheafMorphism& f);

// Totality, landing and naturality of every component against the base.
ValidationReport validate_morphism(const PresheafMorphism& f);

// One morphism representable(c) -> p per element of p(c), in carrier
// order; the component at object d sends each path class to the element
// reached by acting along the path.
std::vector<PresheafMorphism> elements_as_morphisms(const Presheaf& p,
                                                    const std::string& c);

// The Yoneda inverse of elements_as_morphisms: the element of p(c) a
// morphism representable(c) -> p picks out.
ElemId element_of_morphism(const PresheafMorphism& m, const std::string& c);

// Tagged coproduct: element x of the i-th presheaf becomes "i/x" in the
// apex. The returned legs are monomorphisms into the apex.
std::pair<Presheaf, std::vector<PresheafMorphism>>
disjoint_union(const std::vector<Presheaf>& ps);

} // namespace gt
