#pragma once

#include "gt/base_category.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gt {

using ElemId = std::string;

// Severity of a validation finding. Structural problems (unknown names)
// are reported apart from invariant violations (non-total or ill-landing
// maps, broken relations).
enum class ValidationKind { Ok, Structural, Violation };

struct ValidationReport {
    ValidationKind kind = ValidationKind::Ok;
    std::string message;

    bool ok() const { return kind == ValidationKind::Ok; }
};

// A finite presheaf over a base category: a finite carrier set per object
// and, per generator m : a -> b, a total map from elements over b to
// elements over a. Values are immutable once built; all operations on
// presheaves return fresh values.
class Presheaf {
public:
    Presheaf() = default;
    explicit Presheaf(std::shared_ptr<const BaseCategory> base);

    const std::shared_ptr<const BaseCategory>& base_ptr() const { return base_; }
    const BaseCategory& base() const { return *base_; }

    // Carrier over one object, in insertion order.
    const std::vector<ElemId>& elements(const std::string& obj) const;
    bool has_element(const std::string& obj, const ElemId& id) const;
    void add_element(const std::string& obj, const ElemId& id);

    // Action of generator `gen` on `elem` (an element over dst(gen)).
    const ElemId& act(const std::string& gen, const ElemId& elem) const;
    void set_action(const std::string& gen, const ElemId& from, const ElemId& to);
    const std::map<ElemId, ElemId>& action(const std::string& gen) const;

    // Action along a whole path from `from_obj` towards the path's domain.
    ElemId act_along(const GeneratorPath& path, const ElemId& elem) const;

    std::size_t total_elements() const;
    bool empty() const;

    // Carrier sets and action maps coincide (element order ignored).
    bool same_presentation(const Presheaf& other) const;

private:
    std::shared_ptr<const BaseCategory> base_;
    std::map<std::string, std::vector<ElemId>> carrier_;
    std::map<std::string, std::map<ElemId, ElemId>> action_;

    static const std::vector<ElemId> empty_carrier_;
    static const std::map<ElemId, ElemId> empty_action_;
};

// Checks carriers and actions of `p` against `b`: names must be known,
// every action total on its source carrier and landing in its target
// carrier, and every declared relation must hold pointwise. The report
// names the first failing map or relation.
ValidationReport validate_presheaf(const BaseCategory& b, const Presheaf& p);

// The representable presheaf at object c: carrier over d is the set of
// generator paths d -> c modulo the declared relations, acting by path
// precomposition. Element ids are the lexicographically least path of each
// class, generator names joined by '.', with "id" for the empty path.
Presheaf representable(const std::shared_ptr<const BaseCategory>& base,
                       const std::string& c);

} // namespace gt
