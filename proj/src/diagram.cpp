#include "gt/diagram.hpp"

namespace gt {

ValidationReport validate_diagram(const Diagram& d) {
    for (std::size_t i = 0; i < d.arrows.size(); ++i) {
        const DiagramArrow& a = d.arrows[i];
        if (a.from >= d.nodes.size() || a.to >= d.nodes.size()) {
            return {ValidationKind::Structural,
                    "arrow #" + std::to_string(i) + " references a missing node"};
        }
        if (!a.mor.source().same_presentation(d.nodes[a.from]) ||
            !a.mor.target().same_presentation(d.nodes[a.to])) {
            return {ValidationKind::Violation,
                    "arrow #" + std::to_string(i) + " does not match its endpoints"};
        }
        ValidationReport r = validate_morphism(a.mor);
        if (!r.ok()) return r;
    }
    return {};
}

ValidationReport validate_cocone(const Cocone& c) {
    ValidationReport r = validate_diagram(c.diagram);
    if (!r.ok()) return r;
    if (c.legs.size() != c.diagram.nodes.size()) {
        return {ValidationKind::Structural, "cocone needs one leg per node"};
    }
    for (std::size_t i = 0; i < c.legs.size(); ++i) {
        if (!c.legs[i].source().same_presentation(c.diagram.nodes[i]) ||
            !c.legs[i].target().same_presentation(c.apex)) {
            return {ValidationKind::Violation, "leg #" + std::to_string(i) + " mismatches"};
        }
        r = validate_morphism(c.legs[i]);
        if (!r.ok()) return r;
    }
    for (std::size_t i = 0; i < c.diagram.arrows.size(); ++i) {
        const DiagramArrow& a = c.diagram.arrows[i];
        if (!morphism_equal(compose(a.mor, c.legs[a.to]), c.legs[a.from])) {
            return {ValidationKind::Violation,
                    "cocone does not commute with arrow #" + std::to_string(i)};
        }
    }
    return {};
}

} // namespace gt
