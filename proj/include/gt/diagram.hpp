#pragma once

#include "gt/morphism.hpp"

#include <vector>

namespace gt {

struct DiagramArrow {
    std::size_t from = 0;
    std::size_t to = 0;
    PresheafMorphism mor; // source presents nodes[from], target presents nodes[to]
};

// A finite diagram of presheaves over a shared base.
struct Diagram {
    std::vector<Presheaf> nodes;
    std::vector<DiagramArrow> arrows;
};

// A cocone over a diagram: one leg per node into the apex, commuting with
// every diagram arrow.
struct Cocone {
    Diagram diagram;
    Presheaf apex;
    std::vector<PresheafMorphism> legs;
};

// Every arrow's endpoints are nodes and every arrow/leg typechecks; for a
// cocone, leg[to] after each arrow equals leg[from].
ValidationReport validate_diagram(const Diagram& d);
ValidationReport validate_cocone(const Cocone& c);

} // namespace gt
