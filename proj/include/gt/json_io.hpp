#pragma once

#include "gt/rules.hpp"

#include <stdexcept>
#include <string>

namespace gt {

// Raised on malformed input files: bad JSON, missing keys, wrong shapes.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wire formats (exact keys):
//   BaseCategory      {"objects":[...],
//                      "morphisms":[{"name","src","dst"}...],
//                      "relations":[[ [gen,...], [gen,...] ]...]}
//   Presheaf          {"elements":{obj:[id,...]},
//                      "maps":{gen:{elem_of_dst: elem_of_src}}}
//   PresheafMorphism  {"components":{obj:{src_elem: tgt_elem}}}
//   RuleSystem        {"base":..., "rules":[{"id","lhs","rhs"}...],
//                      "inclusions":[{"id","src","dst","lhs_map","rhs_map"}...]}
// Inclusion maps carry bare component objects. The derived closure is
// never serialized.

std::shared_ptr<const BaseCategory> parse_base_category(const std::string& text);
std::string serialize_base_category(const BaseCategory& b);

Presheaf parse_presheaf(const std::string& text,
                        const std::shared_ptr<const BaseCategory>& base);
std::string serialize_presheaf(const Presheaf& p);

PresheafMorphism parse_morphism(const std::string& text, const Presheaf& source,
                                const Presheaf& target);
std::string serialize_morphism(const PresheafMorphism& m);

RuleSystem parse_rule_system(const std::string& text);
std::string serialize_rule_system(const RuleSystem& rs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace gt
