#include "gt/morphism.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gt {

PresheafMorphism::PresheafMorphism(Presheaf source, Presheaf target)
    : source_(std::move(source)), target_(std::move(target)) {}

const ElemId& PresheafMorphism::apply(const std::string& obj, const ElemId& elem) const {
    auto oit = components_.find(obj);
    if (oit == components_.end()) {
        throw std::out_of_range("morphism has no component at " + obj);
    }
    auto eit = oit->second.find(elem);
    if (eit == oit->second.end()) {
        throw std::out_of_range("component at " + obj + " undefined on '" + elem + "'");
    }
    return eit->second;
}

void PresheafMorphism::set(const std::string& obj, const ElemId& from, const ElemId& to) {
    components_[obj][from] = to;
}

std::string PresheafMorphism::serialized_components() const {
    std::ostringstream os;
    for (const auto& [obj, comp] : components_) {
        os << obj << "{";
        for (const auto& [from, to] : comp) os << from << ">" << to << ";";
        os << "}";
    }
    return os.str();
}

PresheafMorphism identity_morphism(const Presheaf& p) {
    PresheafMorphism id(p, p);
    for (const auto& obj : p.base().objects()) {
        for (const auto& x : p.elements(obj)) id.set(obj, x, x);
    }
    return id;
}

PresheafMorphism compose(const PresheafMorphism& f, const PresheafMorphism& g) {
    if (!f.target().same_presentation(g.source())) {
        throw std::invalid_argument("compose: middle presheaves do not match");
    }
    PresheafMorphism out(f.source(), g.target());
    for (const auto& obj : f.source().base().objects()) {
        for (const auto& x : f.source().elements(obj)) {
            out.set(obj, x, g.apply(obj, f.apply(obj, x)));
        }
    }
    return out;
}

bool morphism_equal(const PresheafMorphism& f, const PresheafMorphism& g) {
    if (!f.source().same_presentation(g.source()) ||
        !f.target().same_presentation(g.target())) {
        return false;
    }
    for (const auto& obj : f.source().base().objects()) {
        for (const auto& x : f.source().elements(obj)) {
            if (f.apply(obj, x) != g.apply(obj, x)) return false;
        }
    }
    return true;
}

bool is_mono(const PresheafMorphism& f) {
    for (const auto& obj : f.source().base().objects()) {
        std::set<ElemId> seen;
        for (const auto& x : f.source().elements(obj)) {
            if (!seen.insert(f.apply(obj, x)).second) return false;
        }
    }
    return true;
}

ValidationReport validate_morphism(const PresheafMorphism& f) {
    const Presheaf& src = f.source();
    const Presheaf& tgt = f.target();
    if (!src.base_ptr() || !tgt.base_ptr() || !(src.base() == tgt.base())) {
        return {ValidationKind::Structural, "morphism endpoints live over different bases"};
    }
    const BaseCategory& b = src.base();
    for (const auto& obj : b.objects()) {
        for (const auto& x : src.elements(obj)) {
            ElemId y;
            try {
                y = f.apply(obj, x);
            } catch (const std::out_of_range&) {
                return {ValidationKind::Violation,
                        "component at " + obj + " is not total: missing '" + x + "'"};
            }
            if (!tgt.has_element(obj, y)) {
                return {ValidationKind::Violation,
                        "component at " + obj + " sends '" + x + "' outside the target carrier"};
            }
        }
    }
    // Naturality square per generator and element.
    for (const auto& gen : b.generators()) {
        for (const auto& x : src.elements(gen.dst)) {
            if (f.apply(gen.src, src.act(gen.name, x)) != tgt.act(gen.name, f.apply(gen.dst, x))) {
                return {ValidationKind::Violation,
                        "naturality fails for generator " + gen.name + " at element '" + x + "'"};
            }
        }
    }
    return {};
}

std::vector<PresheafMorphism> elements_as_morphisms(const Presheaf& p, const std::string& c) {
    Presheaf yc = representable(p.base_ptr(), c);
    std::vector<PresheafMorphism> out;
    // Act along a representative path of each class; by validity of p the
    // choice of representative does not matter.
    std::map<std::string, std::map<ElemId, GeneratorPath>> some_path;
    for (const auto& d : p.base().objects()) {
        for (const auto& cls : p.base().path_classes(d, c)) {
            std::string id = cls.front().empty() ? "id" : cls.front().front();
            for (std::size_t i = 1; !cls.front().empty() && i < cls.front().size(); ++i) {
                id += "." + cls.front()[i];
            }
            some_path[d][id] = cls.front();
        }
    }
    for (const auto& x : p.elements(c)) {
        PresheafMorphism m(yc, p);
        for (const auto& d : p.base().objects()) {
            for (const auto& path_elem : yc.elements(d)) {
                m.set(d, path_elem, p.act_along(some_path[d].at(path_elem), x));
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

ElemId element_of_morphism(const PresheafMorphism& m, const std::string& c) {
    // The representable carrier over c contains the empty path "id".
    return m.apply(c, "id");
}

std::pair<Presheaf, std::vector<PresheafMorphism>>
disjoint_union(const std::vector<Presheaf>& ps) {
    if (ps.empty()) return {Presheaf(), {}};
    Presheaf apex(ps.front().base_ptr());
    auto tag = [](std::size_t i, const ElemId& x) { return std::to_string(i) + "/" + x; };
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!ps[i].base().operator==(apex.base())) {
            throw std::invalid_argument("disjoint_union: mixed base categories");
        }
        for (const auto& obj : apex.base().objects()) {
            for (const auto& x : ps[i].elements(obj)) apex.add_element(obj, tag(i, x));
        }
        for (const auto& gen : apex.base().generators()) {
            for (const auto& [from, to] : ps[i].action(gen.name)) {
                apex.set_action(gen.name, tag(i, from), tag(i, to));
            }
        }
    }
    std::vector<PresheafMorphism> legs;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        PresheafMorphism leg(ps[i], apex);
        for (const auto& obj : apex.base().objects()) {
            for (const auto& x : ps[i].elements(obj)) leg.set(obj, x, tag(i, x));
        }
        legs.push_back(std::move(leg));
    }
    return {std::move(apex), std::move(legs)};
}

} // namespace gt
