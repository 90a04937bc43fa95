#pragma once

#include "gt/morphism.hpp"

#include <optional>
#include <vector>

namespace gt {

// All monomorphisms pattern -> target, duplicate-free, ordered
// lexicographically on their serialized components. Both presheaves must
// live over the same base.
std::vector<PresheafMorphism> find_monos(const Presheaf& pattern, const Presheaf& target);

// All monos f2 : e_l.target -> f.target with compose(e_l, f2) = f.
// e_l and f must share their source.
std::vector<PresheafMorphism> extend_mono(const PresheafMorphism& e_l,
                                          const PresheafMorphism& f);

// Some isomorphism p -> q if one exists. Deterministic: the first hit of
// the same search order used by find_monos.
std::optional<PresheafMorphism> is_isomorphic(const Presheaf& p, const Presheaf& q);

} // namespace gt
