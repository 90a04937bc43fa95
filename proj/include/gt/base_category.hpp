#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gt {

// A generating morphism of the index category.
struct Generator {
    std::string name;
    std::string src;
    std::string dst;
};

// A path of composable generators, stored as the list of generator names
// from the path's domain towards its codomain.
using GeneratorPath = std::vector<std::string>;

// Finite presentation of the index category: named objects, generating
// morphisms between them, and pairs of parallel generator paths asserted
// equal. The generator graph must be acyclic so that hom-sets are finite.
class BaseCategory {
public:
    BaseCategory(std::vector<std::string> objects,
                 std::vector<Generator> generators,
                 std::vector<std::pair<GeneratorPath, GeneratorPath>> relations);

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<std::pair<GeneratorPath, GeneratorPath>>& relations() const {
        return relations_;
    }

    bool has_object(const std::string& name) const;
    bool has_generator(const std::string& name) const;
    const Generator& generator(const std::string& name) const;

    // Generators whose dst is `obj`, in declaration order.
    std::vector<std::string> generators_into(const std::string& obj) const;
    // Generators whose src is `obj`, in declaration order.
    std::vector<std::string> generators_out_of(const std::string& obj) const;

    // Domain and codomain of a composable generator path; throws on a
    // non-composable or empty path.
    std::string path_src(const GeneratorPath& path) const;
    std::string path_dst(const GeneratorPath& path) const;

    // All generator paths from `from` to `to`, including the empty path when
    // from == to. Finite because the generator graph is acyclic.
    std::vector<GeneratorPath> paths_between(const std::string& from,
                                             const std::string& to) const;

    // Partition of paths_between into equivalence classes under the
    // congruence generated by the declared relations. Each class is sorted;
    // classes are ordered by their least member.
    std::vector<std::vector<GeneratorPath>> path_classes(const std::string& from,
                                                         const std::string& to) const;

    bool operator==(const BaseCategory& other) const;

private:
    std::vector<std::string> objects_;
    std::vector<Generator> generators_;
    std::vector<std::pair<GeneratorPath, GeneratorPath>> relations_;
    std::map<std::string, Generator> by_name_;
};

// The two-object base whose presheaves are directed multigraphs:
// objects v, e and generators s, t : v -> e.
BaseCategory graph_base();

} // namespace gt
