#ifndef MDIM_FINITE_GRAPH_HPP
#define MDIM_FINITE_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "mdim/errors.hpp"

namespace mdim {

/// Unordered pair of distinct vertices, kept in canonical form u < v.
struct VertexPair {
    int u = 0;
    int v = 0;

    VertexPair() = default;
    VertexPair(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

    friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// Immutable, connected, undirected graph over vertex ids 0..n-1.
///
/// Adjacency lists are sorted and deduplicated at construction. All-pairs
/// distances are computed by BFS from every vertex on first use and cached;
/// the fill is idempotent, so concurrent readers may race on initialization
/// without harm.
class FiniteGraph {
  public:
    FiniteGraph() : FiniteGraph(std::vector<std::vector<int>>{{}}) {}

    int n() const { return static_cast<int>(adj_.size()); }

    const std::vector<int>& neighbors(int u) const {
        check_vertex(u);
        return adj_[u];
    }

    int degree(int u) const { return static_cast<int>(neighbors(u).size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& row : adj_) d = std::max(d, static_cast<int>(row.size()));
        return d;
    }

    /// Shortest-path distance. Symmetric, zero iff u == v.
    int distance(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return distance_table()[static_cast<size_t>(u) * adj_.size() + v];
    }

    /// Row of the all-pairs table: distances from u to every vertex.
    const int* distance_row(int u) const {
        check_vertex(u);
        return distance_table().data() + static_cast<size_t>(u) * adj_.size();
    }

    int diameter() const {
        const auto& t = distance_table();
        return *std::max_element(t.begin(), t.end());
    }

    bool adjacent(int u, int v) const {
        const auto& row = neighbors(u);
        check_vertex(v);
        return std::binary_search(row.begin(), row.end(), v);
    }

    size_t edge_count() const {
        size_t total = 0;
        for (const auto& row : adj_) total += row.size();
        return total / 2;
    }

    bool same_adjacency(const FiniteGraph& other) const { return adj_ == other.adj_; }

    friend FiniteGraph build_graph(int n, const std::vector<std::pair<int, int>>& edges);
    friend FiniteGraph cartesian_product(const FiniteGraph& g, const FiniteGraph& h);

  private:
    explicit FiniteGraph(std::vector<std::vector<int>> adj)
        : adj_(std::move(adj)), cache_(std::make_shared<Cache>()) {}

    void check_vertex(int u) const {
        if (u < 0 || u >= n())
            throw InvalidVertexId("vertex id " + std::to_string(u) + " out of range [0," +
                                  std::to_string(n()) + ")");
    }

    struct Cache {
        std::once_flag once;
        std::vector<int> table;
    };

    const std::vector<int>& distance_table() const {
        std::call_once(cache_->once, [this] {
            const size_t n = adj_.size();
            std::vector<int> table(n * n, -1);
            std::vector<int> queue;
            queue.reserve(n);
            for (size_t s = 0; s < n; ++s) {
                int* dist = table.data() + s * n;
                dist[s] = 0;
                queue.clear();
                queue.push_back(static_cast<int>(s));
                for (size_t head = 0; head < queue.size(); ++head) {
                    const int u = queue[head];
                    for (int v : adj_[u]) {
                        if (dist[v] < 0) {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
            }
            cache_->table = std::move(table);
        });
        return cache_->table;
    }

    std::vector<std::vector<int>> adj_;
    std::shared_ptr<Cache> cache_;
};

/// Validates and normalizes an edge list into a FiniteGraph.
/// Rejects out-of-range ids, self-loops and disconnected input; duplicate
/// edges are merged.
inline FiniteGraph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 0) throw InvalidOrder("vertex count must be positive");
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InvalidVertexId("edge endpoint out of range: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
        if (u == v) throw SelfLoop("self-loop at vertex " + std::to_string(u));
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    // connectivity check
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t head = 0; head < queue.size(); ++head)
        for (int v : adj[queue[head]])
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    if (queue.size() != static_cast<size_t>(n))
        throw DisconnectedGraph("graph is not connected");
    return FiniteGraph(std::move(adj));
}

enum class Family { path, cycle, complete };

inline Family family_from_string(const std::string& s) {
    if (s == "path") return Family::path;
    if (s == "cycle") return Family::cycle;
    if (s == "complete") return Family::complete;
    throw UnsupportedFamily("unknown family kind: " + s);
}

/// P_n, C_n or K_n with vertices 0..n-1: i ~ i+1 on paths, additionally
/// 0 ~ n-1 on cycles, all pairs adjacent on complete graphs.
inline FiniteGraph make_family(Family kind, int n) {
    std::vector<std::pair<int, int>> edges;
    switch (kind) {
        case Family::path:
            if (n < 1) throw InvalidOrder("path requires n >= 1");
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        case Family::cycle:
            if (n < 3) throw InvalidOrder("cycle requires n >= 3");
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(0, n - 1);
            break;
        case Family::complete:
            if (n < 1) throw InvalidOrder("complete graph requires n >= 1");
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
            break;
    }
    return build_graph(n, edges);
}

inline FiniteGraph make_path(int n) { return make_family(Family::path, n); }
inline FiniteGraph make_cycle(int n) { return make_family(Family::cycle, n); }
inline FiniteGraph make_complete(int n) { return make_family(Family::complete, n); }

/// Cartesian product G box H. Vertex (a,v) is encoded as a*|V(H)| + v;
/// d((a,v),(b,w)) = d_G(a,b) + d_H(v,w).
inline FiniteGraph cartesian_product(const FiniteGraph& g, const FiniteGraph& h) {
    const int ng = g.n(), nh = h.n();
    std::vector<std::vector<int>> adj(static_cast<size_t>(ng) * nh);
    for (int a = 0; a < ng; ++a) {
        for (int v = 0; v < nh; ++v) {
            auto& row = adj[static_cast<size_t>(a) * nh + v];
            for (int w : h.neighbors(v)) row.push_back(a * nh + w);
            for (int b : g.neighbors(a)) row.push_back(b * nh + v);
            std::sort(row.begin(), row.end());
        }
    }
    return FiniteGraph(std::move(adj));
}

inline int product_vertex(const FiniteGraph& /*g*/, const FiniteGraph& h, int a, int v) {
    return a * h.n() + v;
}

} // namespace mdim

#endif
