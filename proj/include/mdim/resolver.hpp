#ifndef MDIM_RESOLVER_HPP
#define MDIM_RESOLVER_HPP

#include <atomic>
#include <cstdint>
#include <future>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mdim/finite_graph.hpp"

namespace mdim {

/// r(u|S): distances from u to the landmarks of S, in landmark order.
struct DistanceVector {
    std::vector<int> landmarks;
    std::vector<int> values;

    friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
};

inline DistanceVector distance_vector(const FiniteGraph& g, int u,
                                      const std::vector<int>& landmarks) {
    if (landmarks.empty()) throw EmptyLandmarkSet("landmark set must be nonempty");
    DistanceVector r;
    r.landmarks = landmarks;
    r.values.reserve(landmarks.size());
    for (int x : landmarks) r.values.push_back(g.distance(u, x));
    return r;
}

namespace detail {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Smallest pair (lexicographic on (u,v), u < v) among vertices of `universe`
// mapping to equal keys, or nullopt.
template <typename KeyFn>
std::optional<VertexPair> smallest_collision(const std::vector<int>& universe, KeyFn&& key) {
    std::unordered_map<std::vector<int>, int, VecHash> first_seen;
    std::optional<VertexPair> best;
    for (int u : universe) {
        auto [it, inserted] = first_seen.try_emplace(key(u), u);
        if (!inserted) {
            VertexPair cand(it->second, u);
            if (!best || cand < *best) best = cand;
        }
    }
    return best;
}

} // namespace detail

/// PASS (nullopt) iff all vertices receive distinct distance vectors to S;
/// otherwise the lexicographically smallest unresolved pair.
inline std::optional<VertexPair> is_resolving(const FiniteGraph& g,
                                              const std::vector<int>& landmarks) {
    if (landmarks.empty()) throw EmptyLandmarkSet("landmark set must be nonempty");
    for (int x : landmarks) (void)g.distance(x, x);
    std::vector<int> universe(static_cast<size_t>(g.n()));
    for (int u = 0; u < g.n(); ++u) universe[u] = u;
    return detail::smallest_collision(universe, [&](int u) {
        std::vector<int> key;
        key.reserve(landmarks.size());
        for (int x : landmarks) key.push_back(g.distance(u, x));
        return key;
    });
}

namespace detail {

// Pair-covering view of the resolving-set search: S resolves G iff for every
// vertex pair some landmark in S has distinct distances to the two ends.
// Twin pairs are exactly the pairs whose only resolvers are the twins
// themselves, so the covering search subsumes the usual twin pruning.
class ResolvingCover {
  public:
    explicit ResolvingCover(const FiniteGraph& g) : n_(g.n()) {
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v) pairs_.push_back({u, v});
        npairs_ = pairs_.size();
        words_ = (npairs_ + 63) / 64;
        resolves_.assign(static_cast<size_t>(n_) * words_, 0);
        resolver_count_.assign(npairs_, 0);
        for (size_t p = 0; p < npairs_; ++p) {
            const int* du = g.distance_row(pairs_[p].u);
            const int* dv = g.distance_row(pairs_[p].v);
            for (int x = 0; x < n_; ++x) {
                if (du[x] != dv[x]) {
                    resolves_[static_cast<size_t>(x) * words_ + p / 64] |= 1ull << (p % 64);
                    ++resolver_count_[p];
                }
            }
        }
        max_cover_ = 0;
        for (int x = 0; x < n_; ++x) max_cover_ = std::max(max_cover_, cover_size(x));
        // pairs ordered by resolver count: the scarcest pair makes the best
        // branching point
        pair_order_.resize(npairs_);
        for (size_t p = 0; p < npairs_; ++p) pair_order_[p] = p;
        std::sort(pair_order_.begin(), pair_order_.end(),
                  [&](size_t a, size_t b) { return resolver_count_[a] < resolver_count_[b]; });
        resolver_lists_.resize(npairs_);
        for (size_t p = 0; p < npairs_; ++p)
            for (int x = 0; x < n_; ++x)
                if (resolves(x, p)) resolver_lists_[p].push_back(x);
    }

    int n() const { return n_; }
    size_t words() const { return words_; }
    size_t npairs() const { return npairs_; }
    const uint64_t* row(int x) const { return resolves_.data() + static_cast<size_t>(x) * words_; }
    bool resolves(int x, size_t p) const { return (row(x)[p / 64] >> (p % 64)) & 1; }

    std::vector<uint64_t> full_mask() const {
        std::vector<uint64_t> m(words_, ~0ull);
        if (npairs_ % 64) m.back() = (1ull << (npairs_ % 64)) - 1;
        if (npairs_ == 0) m.assign(words_, 0);
        return m;
    }

    static size_t popcount(const std::vector<uint64_t>& bits) {
        size_t c = 0;
        for (uint64_t w : bits) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    void remove_covered(std::vector<uint64_t>& uncovered, int x) const {
        const uint64_t* r = row(x);
        for (size_t w = 0; w < words_; ++w) uncovered[w] &= ~r[w];
    }

    // Any uncovered pair with the globally smallest resolver count.
    bool first_critical(const std::vector<uint64_t>& uncovered, size_t& out) const {
        for (size_t p : pair_order_) {
            if ((uncovered[p / 64] >> (p % 64)) & 1) {
                out = p;
                return true;
            }
        }
        return false;
    }

    // Does a resolving completion of size <= budget exist using only vertices
    // with id >= min_id and not banned?
    bool feasible(const std::vector<uint64_t>& uncovered, int budget, int min_id,
                  std::vector<char>& banned) const {
        size_t critical;
        if (!first_critical(uncovered, critical)) return true;
        if (budget <= 0) return false;
        if (static_cast<size_t>(budget) * static_cast<size_t>(max_cover_) <
            popcount(uncovered))
            return false;
        const auto& cands = resolver_lists_[critical];
        std::vector<int> tried;
        bool ok = false;
        for (int c : cands) {
            if (c < min_id || banned[c]) continue;
            std::vector<uint64_t> next = uncovered;
            remove_covered(next, c);
            banned[c] = 1; // later branches must not reuse c
            tried.push_back(c);
            if (feasible(next, budget - 1, min_id, banned)) {
                ok = true;
                break;
            }
        }
        for (int c : tried) banned[c] = 0;
        return ok;
    }

    int cover_size(int x) const {
        size_t c = 0;
        const uint64_t* r = row(x);
        for (size_t w = 0; w < words_; ++w) c += static_cast<size_t>(__builtin_popcountll(r[w]));
        return static_cast<int>(c);
    }

    // Lower bound from scarce pairs: greedily pick uncovered pairs with
    // pairwise disjoint resolver sets.
    int disjoint_pair_bound() const {
        std::vector<char> used(static_cast<size_t>(n_), 0);
        int bound = 0;
        for (size_t p : pair_order_) {
            bool free = true;
            for (int x : resolver_lists_[p])
                if (used[x]) {
                    free = false;
                    break;
                }
            if (free) {
                ++bound;
                for (int x : resolver_lists_[p]) used[x] = 1;
            }
        }
        return bound;
    }

  private:
    int n_;
    size_t npairs_ = 0, words_ = 0;
    std::vector<VertexPair> pairs_;
    std::vector<uint64_t> resolves_;
    std::vector<int> resolver_count_;
    std::vector<size_t> pair_order_;
    std::vector<std::vector<int>> resolver_lists_;
    int max_cover_ = 0;
};

} // namespace detail

struct BetaResult {
    int beta = 0;
    std::vector<int> basis;
};

/// Exact metric dimension with the lexicographically smallest basis of that
/// size (as a sorted id tuple). Search proceeds by increasing size; within a
/// size the basis is built by fixing the smallest feasible id position by
/// position. `threads` > 1 partitions the leading-id feasibility scan; the
/// result does not depend on the partitioning.
inline BetaResult metric_dimension(const FiniteGraph& g, int threads = 1) {
    if (g.n() == 1) return {1, {0}};
    detail::ResolvingCover cover(g);

    auto feasible_from = [&](const std::vector<uint64_t>& uncovered, int budget, int min_id) {
        std::vector<char> banned(static_cast<size_t>(g.n()), 0);
        return cover.feasible(uncovered, budget, min_id, banned);
    };

    // Lemma-style degree bound: max degree <= 3^k - 1 forces k up.
    int lb = 1;
    {
        long long cap = 2; // 3^1 - 1
        while (cap < g.max_degree()) {
            ++lb;
            cap = cap * 3 + 2;
        }
        lb = std::max(lb, cover.disjoint_pair_bound());
        lb = std::max(lb, 1);
    }

    for (int k = lb; k < g.n(); ++k) {
        // leading id: smallest c whose choice extends to a full size-k set
        auto try_leading = [&](int c) {
            std::vector<uint64_t> uncovered = cover.full_mask();
            cover.remove_covered(uncovered, c);
            return feasible_from(uncovered, k - 1, c + 1);
        };
        int lead = -1;
        if (threads <= 1) {
            for (int c = 0; c < g.n() && lead < 0; ++c)
                if (try_leading(c)) lead = c;
        } else {
            std::atomic<int> best{g.n()};
            auto worker = [&](int begin, int step) {
                for (int c = begin; c < g.n(); c += step) {
                    if (c >= best.load()) break;
                    if (try_leading(c)) {
                        int cur = best.load();
                        while (c < cur && !best.compare_exchange_weak(cur, c)) {
                        }
                        break;
                    }
                }
            };
            std::vector<std::future<void>> futs;
            for (int t = 0; t < threads; ++t)
                futs.push_back(std::async(std::launch::async, worker, t, threads));
            for (auto& f : futs) f.get();
            if (best.load() < g.n()) lead = best.load();
        }
        if (lead < 0) continue;

        std::vector<int> basis{lead};
        std::vector<uint64_t> uncovered = cover.full_mask();
        cover.remove_covered(uncovered, lead);
        while (static_cast<int>(basis.size()) < k) {
            const int remaining = k - static_cast<int>(basis.size());
            for (int c = basis.back() + 1; c < g.n(); ++c) {
                std::vector<uint64_t> next = uncovered;
                cover.remove_covered(next, c);
                if (feasible_from(next, remaining - 1, c + 1)) {
                    basis.push_back(c);
                    uncovered = std::move(next);
                    break;
                }
            }
        }
        return {k, basis};
    }
    // S = V \ {n-1} always resolves, so the loop exits before reaching here.
    std::vector<int> all(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) all[i] = i;
    return {g.n(), all};
}

/// PASS (nullopt) iff every pair of distinct vertices of U is doubly resolved
/// by two landmarks of S; otherwise the smallest failing pair.
inline std::optional<VertexPair> doubly_resolves(const FiniteGraph& g,
                                                 const std::vector<int>& s,
                                                 const std::vector<int>& u) {
    if (s.size() < 2) throw TooFewLandmarks("doubly resolving needs |S| >= 2");
    for (int x : s) (void)g.distance(x, x);
    for (int w : u) (void)g.distance(w, w);
    std::vector<int> sorted_u = u;
    std::sort(sorted_u.begin(), sorted_u.end());
    sorted_u.erase(std::unique(sorted_u.begin(), sorted_u.end()), sorted_u.end());
    // f_x(a,b) = d(a,x) - d(b,x) must take two values over x in S
    return detail::smallest_collision(sorted_u, [&](int a) {
        std::vector<int> key;
        key.reserve(s.size() - 1);
        const int base = g.distance(a, s[0]);
        for (size_t i = 1; i < s.size(); ++i) key.push_back(g.distance(a, s[i]) - base);
        return key;
    });
}

struct PsiResult {
    int psi = 0;
    std::vector<int> dset;
};

/// Exact minimum doubly resolving set, enumerated by increasing size and
/// lexicographic order within a size.
inline PsiResult psi(const FiniteGraph& g) {
    if (g.n() < 2) throw TrivialGraph("psi undefined on the trivial graph");
    std::vector<int> all(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) all[i] = i;

    std::vector<int> subset;
    auto search = [&](auto&& self, int next, int need) -> bool {
        if (need == 0) return !doubly_resolves(g, subset, all).has_value();
        for (int c = next; c <= g.n() - need; ++c) {
            subset.push_back(c);
            if (self(self, c + 1, need - 1)) return true;
            subset.pop_back();
        }
        return false;
    };
    for (int k = 2; k <= g.n(); ++k) {
        subset.clear();
        if (search(search, 0, k)) return {k, subset};
    }
    throw InternalVerificationFailure("V itself must doubly resolve V");
}

/// f_S(u): all ordered-pair coordinate differences d(u,x_i) - d(u,x_j),
/// i != j, in row-major order over landmark positions.
struct SignatureVector {
    std::vector<int> values;

    friend bool operator==(const SignatureVector&, const SignatureVector&) = default;
};

inline SignatureVector signature(const FiniteGraph& g, int u, const std::vector<int>& s) {
    if (s.size() < 2) throw TooFewLandmarks("signature needs |S| >= 2");
    SignatureVector sig;
    sig.values.reserve(s.size() * (s.size() - 1));
    std::vector<int> d;
    d.reserve(s.size());
    for (int x : s) d.push_back(g.distance(u, x));
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j < s.size(); ++j)
            if (i != j) sig.values.push_back(d[i] - d[j]);
    return sig;
}

/// Smallest pair of U with identical signature vectors, or nullopt. When
/// |U| > (2D+1)^(|S|(|S|-1)), D the max landmark separation, a collision is
/// guaranteed by pigeonhole.
inline std::optional<VertexPair> find_double_collision(const FiniteGraph& g,
                                                       const std::vector<int>& s,
                                                       const std::vector<int>& u) {
    if (s.size() < 2) throw TooFewLandmarks("signatures need |S| >= 2");
    std::vector<int> sorted_u = u;
    std::sort(sorted_u.begin(), sorted_u.end());
    sorted_u.erase(std::unique(sorted_u.begin(), sorted_u.end()), sorted_u.end());
    return detail::smallest_collision(sorted_u,
                                      [&](int a) { return signature(g, a, s).values; });
}

/// PASS (nullopt) iff max degree <= 3^k - 1; otherwise the smallest vertex
/// exceeding the bound.
inline std::optional<int> degree_bound_check(const FiniteGraph& g, int k) {
    if (k < 1) throw InputError("degree bound requires k >= 1");
    long long bound = 1;
    for (int i = 0; i < k && bound <= (1ll << 40); ++i) bound *= 3;
    bound -= 1;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > bound) return v;
    return std::nullopt;
}

} // namespace mdim

#endif
