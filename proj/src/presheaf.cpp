#include "gt/presheaf.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gt {

const std::vector<ElemId> Presheaf::empty_carrier_;
const std::map<ElemId, ElemId> Presheaf::empty_action_;

Presheaf::Presheaf(std::shared_ptr<const BaseCategory> base) : base_(std::move(base)) {
    if (!base_) throw std::invalid_argument("presheaf requires a base category");
}

const std::vector<ElemId>& Presheaf::elements(const std::string& obj) const {
    auto it = carrier_.find(obj);
    return it == carrier_.end() ? empty_carrier_ : it->second;
}

bool Presheaf::has_element(const std::string& obj, const ElemId& id) const {
    const auto& elems = elements(obj);
    return std::find(elems.begin(), elems.end(), id) != elems.end();
}

void Presheaf::add_element(const std::string& obj, const ElemId& id) {
    if (!base_ || !base_->has_object(obj)) {
        throw std::invalid_argument("unknown object: " + obj);
    }
    if (has_element(obj, id)) {
        throw std::invalid_argument("duplicate element '" + id + "' over " + obj);
    }
    carrier_[obj].push_back(id);
}

const ElemId& Presheaf::act(const std::string& gen, const ElemId& elem) const {
    auto git = action_.find(gen);
    if (git == action_.end()) throw std::out_of_range("no action for generator " + gen);
    auto eit = git->second.find(elem);
    if (eit == git->second.end()) {
        throw std::out_of_range("action " + gen + " undefined on element " + elem);
    }
    return eit->second;
}

void Presheaf::set_action(const std::string& gen, const ElemId& from, const ElemId& to) {
    if (!base_ || !base_->has_generator(gen)) {
        throw std::invalid_argument("unknown generator: " + gen);
    }
    action_[gen][from] = to;
}

const std::map<ElemId, ElemId>& Presheaf::action(const std::string& gen) const {
    auto it = action_.find(gen);
    return it == action_.end() ? empty_action_ : it->second;
}

ElemId Presheaf::act_along(const GeneratorPath& path, const ElemId& elem) const {
    // The path g1..gk denotes the composite gk after ... after g1; its
    // contravariant action applies p(gk) first.
    ElemId cur = elem;
    for (auto it = path.rbegin(); it != path.rend(); ++it) cur = act(*it, cur);
    return cur;
}

std::size_t Presheaf::total_elements() const {
    std::size_t n = 0;
    for (const auto& [obj, elems] : carrier_) n += elems.size();
    return n;
}

bool Presheaf::empty() const { return total_elements() == 0; }

bool Presheaf::same_presentation(const Presheaf& other) const {
    if (!base_ || !other.base_ || !(*base_ == *other.base_)) return false;
    for (const auto& obj : base_->objects()) {
        std::vector<ElemId> a = elements(obj);
        std::vector<ElemId> b = other.elements(obj);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    for (const auto& gen : base_->generators()) {
        if (action(gen.name) != other.action(gen.name)) return false;
    }
    return true;
}

ValidationReport validate_presheaf(const BaseCategory& b, const Presheaf& p) {
    if (!p.base_ptr() || !(*p.base_ptr() == b)) {
        return {ValidationKind::Structural, "presheaf is not over the given base category"};
    }
    for (const auto& gen : b.generators()) {
        const auto& act = p.action(gen.name);
        const auto& dom = p.elements(gen.dst);
        std::set<ElemId> dom_set(dom.begin(), dom.end());
        for (const auto& [from, to] : act) {
            if (!dom_set.count(from)) {
                return {ValidationKind::Structural,
                        "action " + gen.name + " defined on unknown element '" + from + "'"};
            }
            if (!p.has_element(gen.src, to)) {
                return {ValidationKind::Violation,
                        "action " + gen.name + " sends '" + from + "' outside the carrier over " +
                            gen.src};
            }
        }
        for (const auto& x : dom) {
            if (!act.count(x)) {
                return {ValidationKind::Violation,
                        "action " + gen.name + " is not total: missing element '" + x + "'"};
            }
        }
    }
    for (std::size_t i = 0; i < b.relations().size(); ++i) {
        const auto& [lhs, rhs] = b.relations()[i];
        const std::string dst = b.path_dst(lhs);
        for (const auto& x : p.elements(dst)) {
            if (p.act_along(lhs, x) != p.act_along(rhs, x)) {
                std::ostringstream os;
                os << "relation #" << i << " fails on element '" << x << "' over " << dst;
                return {ValidationKind::Violation, os.str()};
            }
        }
    }
    return {};
}

namespace {

std::string path_id(const GeneratorPath& p) {
    if (p.empty()) return "id";
    std::string out = p.front();
    for (std::size_t i = 1; i < p.size(); ++i) out += "." + p[i];
    return out;
}

} // namespace

Presheaf representable(const std::shared_ptr<const BaseCategory>& base,
                       const std::string& c) {
    if (!base->has_object(c)) throw std::invalid_argument("unknown object: " + c);
    Presheaf out(base);
    // class representative per (object, path) for the action maps
    std::map<std::string, std::map<GeneratorPath, GeneratorPath>> repr;
    for (const auto& d : base->objects()) {
        for (const auto& cls : base->path_classes(d, c)) {
            out.add_element(d, path_id(cls.front()));
            for (const auto& member : cls) repr[d][member] = cls.front();
        }
    }
    // Action of m : a -> b precomposes a path b -> c with m.
    for (const auto& gen : base->generators()) {
        for (const auto& [path, rep] : repr[gen.dst]) {
            if (path != rep) continue;
            GeneratorPath pre{gen.name};
            pre.insert(pre.end(), path.begin(), path.end());
            out.set_action(gen.name, path_id(path), path_id(repr[gen.src].at(pre)));
        }
    }
    return out;
}

} // namespace gt
