#include "gt/base_category.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gt {

namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) {
            throw std::invalid_argument(std::string("duplicate ") + what + " name: " + n);
        }
    }
}

} // namespace

BaseCategory::BaseCategory(std::vector<std::string> objects,
                           std::vector<Generator> generators,
                           std::vector<std::pair<GeneratorPath, GeneratorPath>> relations)
    : objects_(std::move(objects)),
      generators_(std::move(generators)),
      relations_(std::move(relations)) {
    check_unique(objects_, "object");
    std::vector<std::string> gen_names;
    gen_names.reserve(generators_.size());
    for (const auto& g : generators_) gen_names.push_back(g.name);
    check_unique(gen_names, "generator");
    for (const auto& g : generators_) {
        if (std::find(objects_.begin(), objects_.end(), g.src) == objects_.end() ||
            std::find(objects_.begin(), objects_.end(), g.dst) == objects_.end()) {
            throw std::invalid_argument("generator " + g.name + " has unknown endpoint");
        }
        by_name_[g.name] = g;
    }
    for (const auto& [lhs, rhs] : relations_) {
        if (lhs.empty() || rhs.empty()) {
            throw std::invalid_argument("relation paths must be nonempty");
        }
        if (path_src(lhs) != path_src(rhs) || path_dst(lhs) != path_dst(rhs)) {
            throw std::invalid_argument("relation paths must be parallel");
        }
    }

    // Acyclicity of the generator graph keeps every hom-set finite.
    std::map<std::string, int> state; // 0 unvisited, 1 on stack, 2 done
    for (const auto& o : objects_) state[o] = 0;
    auto visit = [&](const std::string& start) {
        std::vector<std::pair<std::string, std::size_t>> dfs{{start, 0}};
        state[start] = 1;
        while (!dfs.empty()) {
            auto& [obj, next] = dfs.back();
            std::vector<std::string> succ;
            for (const auto& g : generators_) {
                if (g.src == obj) succ.push_back(g.dst);
            }
            if (next < succ.size()) {
                const std::string to = succ[next++];
                if (state[to] == 1) {
                    throw std::invalid_argument("generator graph has a directed cycle through " + to);
                }
                if (state[to] == 0) {
                    state[to] = 1;
                    dfs.emplace_back(to, 0);
                }
            } else {
                state[obj] = 2;
                dfs.pop_back();
            }
        }
    };
    for (const auto& o : objects_) {
        if (state[o] == 0) visit(o);
    }
}

bool BaseCategory::has_object(const std::string& name) const {
    return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
}

bool BaseCategory::has_generator(const std::string& name) const {
    return by_name_.count(name) != 0;
}

const Generator& BaseCategory::generator(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) {
        throw std::out_of_range("unknown generator: " + name);
    }
    return it->second;
}

std::vector<std::string> BaseCategory::generators_into(const std::string& obj) const {
    std::vector<std::string> out;
    for (const auto& g : generators_) {
        if (g.dst == obj) out.push_back(g.name);
    }
    return out;
}

std::vector<std::string> BaseCategory::generators_out_of(const std::string& obj) const {
    std::vector<std::string> out;
    for (const auto& g : generators_) {
        if (g.src == obj) out.push_back(g.name);
    }
    return out;
}

std::string BaseCategory::path_src(const GeneratorPath& path) const {
    if (path.empty()) throw std::invalid_argument("empty path has no unique endpoints");
    std::string at = generator(path.front()).src;
    std::string expect = at;
    for (const auto& name : path) {
        const Generator& g = generator(name);
        if (g.src != expect) throw std::invalid_argument("path is not composable at " + name);
        expect = g.dst;
    }
    return at;
}

std::string BaseCategory::path_dst(const GeneratorPath& path) const {
    if (path.empty()) throw std::invalid_argument("empty path has no unique endpoints");
    path_src(path); // composability check
    return generator(path.back()).dst;
}

std::vector<GeneratorPath> BaseCategory::paths_between(const std::string& from,
                                                       const std::string& to) const {
    std::vector<GeneratorPath> result;
    GeneratorPath current;
    // DFS over the acyclic generator graph.
    auto rec = [&](auto&& self, const std::string& at) -> void {
        if (at == to) result.push_back(current);
        for (const auto& g : generators_) {
            if (g.src != at) continue;
            current.push_back(g.name);
            self(self, g.dst);
            current.pop_back();
        }
    };
    rec(rec, from);
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::vector<GeneratorPath>> BaseCategory::path_classes(
    const std::string& from, const std::string& to) const {
    std::vector<GeneratorPath> paths = paths_between(from, to);
    std::map<GeneratorPath, std::size_t> index;
    for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;

    std::vector<std::size_t> parent(paths.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    // Congruence closure: rewrite any subpath matching one side of a
    // relation to the other side.
    auto try_rewrites = [&](const GeneratorPath& p, const GeneratorPath& from_side,
                            const GeneratorPath& to_side) {
        if (from_side.size() > p.size()) return;
        for (std::size_t pos = 0; pos + from_side.size() <= p.size(); ++pos) {
            if (!std::equal(from_side.begin(), from_side.end(), p.begin() + pos)) continue;
            GeneratorPath q(p.begin(), p.begin() + pos);
            q.insert(q.end(), to_side.begin(), to_side.end());
            q.insert(q.end(), p.begin() + pos + from_side.size(), p.end());
            auto it = index.find(q);
            if (it != index.end()) unite(index.at(p), it->second);
        }
    };
    for (const auto& p : paths) {
        for (const auto& [lhs, rhs] : relations_) {
            try_rewrites(p, lhs, rhs);
            try_rewrites(p, rhs, lhs);
        }
    }

    std::map<std::size_t, std::vector<GeneratorPath>> classes;
    for (std::size_t i = 0; i < paths.size(); ++i) classes[find(i)].push_back(paths[i]);
    std::vector<std::vector<GeneratorPath>> out;
    for (auto& [root, members] : classes) {
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool BaseCategory::operator==(const BaseCategory& other) const {
    if (objects_ != other.objects_ || relations_ != other.relations_) return false;
    if (generators_.size() != other.generators_.size()) return false;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const Generator& a = generators_[i];
        const Generator& b = other.generators_[i];
        if (a.name != b.name || a.src != b.src || a.dst != b.dst) return false;
    }
    return true;
}

BaseCategory graph_base() {
    return BaseCategory({"v", "e"}, {{"s", "v", "e"}, {"t", "v", "e"}}, {});
}

} // namespace gt
