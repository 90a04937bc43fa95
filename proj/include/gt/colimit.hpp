#pragma once

#include "gt/diagram.hpp"

#include <vector>

namespace gt {

// A span between two fixed feet: apex -> p1 and apex -> p2.
struct Span {
    Presheaf apex;
    PresheafMorphism left;  // apex -> p1
    PresheafMorphism right; // apex -> p2
};

struct GeneralizedPushoutResult {
    Presheaf apex;
    PresheafMorphism leg1; // p1 -> apex
    PresheafMorphism leg2; // p2 -> apex
};

// Universal cocone of a finite diagram. Apex elements are equivalence
// classes of tagged node elements "i/x" under the relation generated by
// the diagram arrows; each class is named by its lexicographically least
// member. Induced actions are asserted consistent (naturality guarantees
// it) rather than handled.
Cocone colimit_of_diagram(const Diagram& d);

// Colimit of the diagram spanned by p1, p2 and the given spans. When the
// resulting p1 leg is injective, p1's identifiers are preserved verbatim
// in the apex, so the leg is a plain inclusion over a fresh value; new
// elements take their p2 name, primed until free.
GeneralizedPushoutResult generalized_pushout(const Presheaf& p1, const Presheaf& p2,
                                             const std::vector<Span>& spans);

// The unique morphism u from the apex of a universal cocone to the apex of
// another cocone over the same diagram with compose(universal.leg_i, u) =
// other.leg_i for every node.
PresheafMorphism mediating(const Cocone& universal, const Cocone& other);

} // namespace gt
