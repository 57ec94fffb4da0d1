#ifndef MDIM_TREES_HPP
#define MDIM_TREES_HPP

#include <optional>
#include <vector>

#include "mdim/rayed.hpp"

namespace mdim {

/// Tree view of a finite graph or a rayed graph. A rayed graph is acyclic
/// iff its core is (rays never close cycles); a finite tree is represented
/// as a rayed graph with no rays.
class TreeView {
  public:
    explicit TreeView(RayedGraph rg) : rg_(std::move(rg)) {
        const auto& core = rg_.core();
        if (core.edge_count() != static_cast<size_t>(core.n()) - 1)
            throw NotATree("underlying core graph contains a cycle");
    }
    explicit TreeView(const FiniteGraph& g) : TreeView(RayedGraph(g, {})) {}

    const RayedGraph& graph() const { return rg_; }
    const FiniteGraph& core() const { return rg_.core(); }
    bool is_infinite() const { return rg_.ray_count() > 0; }

    /// Degree of a core vertex in the (possibly infinite) tree.
    int degree(int v) const { return rg_.core().degree(v) + rg_.rays_at(v); }

  private:
    RayedGraph rg_;
};

/// One branch at a vertex v: the neighbor region reached through either a
/// core neighbor or a ray attached at v.
struct Branch {
    bool via_ray = false;
    int neighbor = 0; // core neighbor id, or ray index
    bool is_path = false;
    bool infinite = false;
    RayedVertex depth1; // the branch vertex adjacent to v
};

struct BranchCount {
    int vertex = 0;
    int degree = 0;
    int path_count = 0;           // P_T(v)
    std::vector<Branch> branches; // in canonical order: core neighbors, then rays
};

/// Per degree->=3 vertex, the number of branches that are (finite or one-way
/// infinite) paths. A branch is a path iff every vertex in it other than v
/// has tree degree <= 2.
struct BranchReport {
    std::vector<BranchCount> entries; // ascending vertex id, degree >= 3 only
};

namespace detail {

// Component of core minus v containing `start`, plus whether all its
// vertices (and any rays hanging off them) keep degree <= 2.
inline void branch_component(const TreeView& t, int v, int start, std::vector<int>& comp) {
    comp.clear();
    comp.push_back(start);
    std::vector<char> seen(static_cast<size_t>(t.core().n()), 0);
    seen[v] = 1;
    seen[start] = 1;
    for (size_t head = 0; head < comp.size(); ++head)
        for (int w : t.core().neighbors(comp[head]))
            if (!seen[w]) {
                seen[w] = 1;
                comp.push_back(w);
            }
}

} // namespace detail

inline BranchReport branch_paths(const TreeView& t) {
    BranchReport report;
    std::vector<int> comp;
    for (int v = 0; v < t.core().n(); ++v) {
        if (t.degree(v) < 3) continue;
        BranchCount entry;
        entry.vertex = v;
        entry.degree = t.degree(v);
        for (int nb : t.core().neighbors(v)) {
            Branch b;
            b.via_ray = false;
            b.neighbor = nb;
            b.depth1 = RayedVertex::core(nb);
            detail::branch_component(t, v, nb, comp);
            b.is_path = true;
            b.infinite = false;
            for (int w : comp) {
                if (t.degree(w) > 2) b.is_path = false;
                if (t.graph().rays_at(w) > 0) b.infinite = true;
            }
            entry.branches.push_back(b);
        }
        for (int r = 0; r < t.graph().ray_count(); ++r) {
            if (t.graph().attachment(r) != v) continue;
            Branch b;
            b.via_ray = true;
            b.neighbor = r;
            b.depth1 = RayedVertex::ray(r, 1);
            b.is_path = true; // a pendant ray is a one-way infinite path
            b.infinite = true;
            entry.branches.push_back(b);
        }
        for (const Branch& b : entry.branches)
            if (b.is_path) ++entry.path_count;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace detail {

// Endpoints (degree <= 1 core vertices with no rays) of a tree whose maximum
// degree is at most 2, i.e. a path, P_inf or P_2inf.
inline std::vector<RayedVertex> path_like_ends(const TreeView& t) {
    std::vector<RayedVertex> ends;
    for (int v = 0; v < t.core().n(); ++v)
        if (t.degree(v) <= 1) ends.push_back(RayedVertex::core(v));
    return ends;
}

inline int max_tree_degree(const TreeView& t) {
    int d = 0;
    for (int v = 0; v < t.core().n(); ++v) d = std::max(d, t.degree(v));
    return d;
}

} // namespace detail

/// beta(T) = sum over deg(v) >= 3 of max(P_T(v) - 1, 0). Trees of maximum
/// degree <= 2 are paths (beta 1), P_inf (beta 1) or P_2inf (beta 2).
inline int tree_dimension(const TreeView& t) {
    if (detail::max_tree_degree(t) <= 2)
        return t.graph().ray_count() == 2 ? 2 : 1;
    int total = 0;
    for (const auto& entry : branch_paths(t).entries)
        total += std::max(entry.path_count - 1, 0);
    return total;
}

/// A concrete metric basis realizing tree_dimension: at each qualifying
/// vertex, the depth-1 vertices of the first P_T(v)-1 branch paths in
/// canonical order. Degenerate shapes: a path contributes its smallest
/// endpoint; P_inf its endpoint; P_2inf the depth-1 vertices of both rays.
inline std::vector<RayedVertex> tree_basis(const TreeView& t) {
    if (detail::max_tree_degree(t) <= 2) {
        if (t.graph().ray_count() == 0) {
            auto ends = detail::path_like_ends(t);
            if (ends.empty()) return {RayedVertex::core(0)}; // K1
            return {ends.front()};
        }
        if (t.graph().ray_count() == 1) {
            // P_inf: the unique endpoint resolves everything
            auto ends = detail::path_like_ends(t);
            if (!ends.empty()) return {ends.front()};
            return {RayedVertex::core(t.graph().attachment(0))}; // K1 core
        }
        // P_2inf: two rays, basis on both sides
        return {RayedVertex::ray(0, 1), RayedVertex::ray(1, 1)};
    }
    std::vector<RayedVertex> basis;
    for (const auto& entry : branch_paths(t).entries) {
        int picked = 0;
        for (const Branch& b : entry.branches) {
            if (picked >= entry.path_count - 1) break;
            if (!b.is_path) continue;
            basis.push_back(b.depth1);
            ++picked;
        }
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

struct FinitenessReport {
    bool finite_dimension = true;
    int degree3_count = 0; // |W|, the witness quantity
};

/// Every rayed tree has finitely many vertices of degree >= 3, hence finite
/// metric dimension. The |W| count is the quantity that grows without bound
/// along truncation families of trees with infinite dimension (e.g. combs).
inline FinitenessReport infinite_tree_finite_dim(const TreeView& t) {
    FinitenessReport rep;
    for (int v = 0; v < t.core().n(); ++v)
        if (t.degree(v) >= 3) ++rep.degree3_count;
    rep.finite_dimension = true;
    return rep;
}

/// Degree->=3 count of a finite graph; used to witness dimension growth on
/// truncation families.
inline int degree3_count(const FiniteGraph& g) {
    int c = 0;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) >= 3) ++c;
    return c;
}

} // namespace mdim

#endif
