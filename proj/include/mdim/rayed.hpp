#ifndef MDIM_RAYED_HPP
#define MDIM_RAYED_HPP

#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "mdim/finite_graph.hpp"
#include "mdim/resolver.hpp"

namespace mdim {

/// Vertex of a rayed graph: either a core vertex or the depth-d vertex of a
/// ray (d >= 1; depth 0 is the attachment core vertex and is not
/// representable as a ray vertex).
struct RayedVertex {
    enum class Kind { core, ray };
    Kind kind = Kind::core;
    int id = 0;    // core vertex id, or ray index
    int depth = 0; // >= 1 for ray vertices

    static RayedVertex core(int v) { return {Kind::core, v, 0}; }
    static RayedVertex ray(int r, int depth) { return {Kind::ray, r, depth}; }

    bool is_core() const { return kind == Kind::core; }

    friend auto operator<=>(const RayedVertex&, const RayedVertex&) = default;
};

inline std::string to_string(const RayedVertex& v) {
    return v.is_core() ? "c:" + std::to_string(v.id)
                       : "r:" + std::to_string(v.id) + ":" + std::to_string(v.depth);
}

/// Finite core plus finitely many pendant one-way infinite rays. Each ray is
/// a metric ray: d(Ray(r,a), x) = a + d_core(attach(r), x) for x off the ray.
class RayedGraph {
  public:
    RayedGraph(FiniteGraph core, std::vector<int> attachments)
        : core_(std::move(core)), attach_(std::move(attachments)) {
        for (int a : attach_)
            if (a < 0 || a >= core_.n())
                throw InvalidAttachment("ray attachment " + std::to_string(a) +
                                        " is not a core vertex");
    }

    const FiniteGraph& core() const { return core_; }
    int ray_count() const { return static_cast<int>(attach_.size()); }
    int attachment(int r) const {
        if (r < 0 || r >= ray_count())
            throw InvalidVertex("ray index " + std::to_string(r) + " out of range");
        return attach_[r];
    }
    const std::vector<int>& attachments() const { return attach_; }

    void check(const RayedVertex& v) const {
        if (v.is_core()) {
            if (v.id < 0 || v.id >= core_.n()) throw InvalidVertex("core id out of range");
        } else {
            if (v.id < 0 || v.id >= ray_count()) throw InvalidVertex("ray index out of range");
            if (v.depth < 1) throw InvalidVertex("ray depth must be >= 1");
        }
    }

    int distance(const RayedVertex& a, const RayedVertex& b) const {
        check(a);
        check(b);
        if (a.is_core() && b.is_core()) return core_.distance(a.id, b.id);
        if (a.is_core()) return b.depth + core_.distance(attach_[b.id], a.id);
        if (b.is_core()) return a.depth + core_.distance(attach_[a.id], b.id);
        if (a.id == b.id) return std::abs(a.depth - b.depth);
        return a.depth + core_.distance(attach_[a.id], attach_[b.id]) + b.depth;
    }

    /// Degree in the infinite graph.
    int degree(const RayedVertex& v) const {
        check(v);
        if (v.is_core()) return core_.degree(v.id) + rays_at(v.id);
        return v.depth == 0 ? 0 : 2; // interior ray vertices
    }

    int rays_at(int core_vertex) const {
        int c = 0;
        for (int a : attach_)
            if (a == core_vertex) ++c;
        return c;
    }

  private:
    FiniteGraph core_;
    std::vector<int> attach_;
};

inline RayedGraph build_rayed(FiniteGraph core, std::vector<int> attachments) {
    return RayedGraph(std::move(core), std::move(attachments));
}

/// P_kinf: k one-way infinite paths joined at a single center (k >= 1).
inline RayedGraph make_k_way_infinite_path(int k) {
    if (k < 1) throw InvalidOrder("k-way infinite path requires k >= 1");
    return RayedGraph(make_complete(1), std::vector<int>(static_cast<size_t>(k), 0));
}

/// Finite truncation: the core plus each ray cut at the given depth. Ray
/// vertex (r, d) with d <= depth maps to id core_n + r*depth + (d-1).
/// Because rays are pendant, distances between surviving vertices are
/// unchanged by the cut.
struct Truncation {
    FiniteGraph graph;
    int core_n = 0;
    int depth = 0;

    int to_id(const RayedVertex& v) const {
        if (v.is_core()) return v.id;
        assert(v.depth <= depth);
        return core_n + v.id * depth + (v.depth - 1);
    }
    RayedVertex from_id(int id) const {
        if (id < core_n) return RayedVertex::core(id);
        const int off = id - core_n;
        return RayedVertex::ray(off / depth, off % depth + 1);
    }
};

inline Truncation truncate(const RayedGraph& rg, int depth) {
    if (depth < 1) throw InputError("truncation depth must be >= 1");
    const int cn = rg.core().n();
    const int n = cn + rg.ray_count() * depth;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < cn; ++u)
        for (int v : rg.core().neighbors(u))
            if (u < v) edges.emplace_back(u, v);
    for (int r = 0; r < rg.ray_count(); ++r) {
        int prev = rg.attachment(r);
        for (int d = 1; d <= depth; ++d) {
            const int cur = cn + r * depth + (d - 1);
            edges.emplace_back(prev, cur);
            prev = cur;
        }
    }
    return Truncation{build_graph(n, edges), cn, depth};
}

inline int rayed_distance(const RayedGraph& rg, const RayedVertex& a, const RayedVertex& b) {
    return rg.distance(a, b);
}

inline std::vector<int> rayed_vector(const RayedGraph& rg, const RayedVertex& u,
                                     const std::vector<RayedVertex>& landmarks) {
    std::vector<int> r;
    r.reserve(landmarks.size());
    for (const auto& x : landmarks) r.push_back(rg.distance(u, x));
    return r;
}

/// i(P,S): least index beyond which distance vectors along ray r grow by
/// exactly (1,...,1) per step. Computed by scanning the distance sequences;
/// for pendant rays this equals the deepest S-member on the ray (0 if none),
/// which is asserted.
inline int stabilization_index(const RayedGraph& rg, int ray,
                               const std::vector<RayedVertex>& landmarks) {
    if (landmarks.empty()) throw EmptyLandmarkSet("landmark set must be nonempty");
    if (ray < 0 || ray >= rg.ray_count()) throw InvalidVertex("ray index out of range");
    int deepest = 0;
    for (const auto& x : landmarks) {
        rg.check(x);
        if (!x.is_core() && x.id == ray) deepest = std::max(deepest, x.depth);
    }
    auto at = [&](int d) {
        return d == 0 ? RayedVertex::core(rg.attachment(ray)) : RayedVertex::ray(ray, d);
    };
    int last_break = -1;
    for (int i = 0; i <= deepest; ++i) {
        for (const auto& x : landmarks) {
            if (rg.distance(at(i + 1), x) != rg.distance(at(i), x) + 1) {
                last_break = i;
                break;
            }
        }
    }
    const int scanned = last_break + 1;
    if (scanned != deepest)
        throw InternalVerificationFailure("stabilization scan disagrees with closed form");
    return scanned;
}

/// Outcome of certifying a landmark set on a rayed graph. `ray_bases[r]` is
/// c_P = r(u_{i(P,S)}|S) - i(P,S)*(1,...,1): beyond the stabilization index,
/// r(u_d|S) = c_P + d*(1,...,1). PASS iff no base pair differs by a constant
/// vector and the finite window check found no collision.
struct RayedCertificate {
    int window = 0;
    std::vector<RayedVertex> landmarks; // canonical order used by the vectors
    std::vector<std::vector<int>> ray_bases;
    std::vector<int> stabilization;
    std::optional<std::pair<RayedVertex, RayedVertex>> unresolved;

    bool pass() const { return !unresolved.has_value(); }
};

namespace detail {

inline bool constant_difference(const std::vector<int>& a, const std::vector<int>& b,
                                int& delta) {
    delta = b[0] - a[0];
    for (size_t i = 1; i < a.size(); ++i)
        if (b[i] - a[i] != delta) return false;
    return true;
}

} // namespace detail

/// Decides whether S resolves the whole infinite graph.
///
/// Deep pairs on distinct rays collide exactly when their bases differ by a
/// constant vector; an explicit witness at suitable depths is returned. All
/// other pairs are confined to the truncation at window
///   B = maxdepth(S) + diam(core) + max_x max_c d(c,x) + 1:
/// a vertex deeper than B has every coordinate larger than any coordinate a
/// vertex below the landmark depths can attain, and a vertex below its ray's
/// stabilization index cannot collide across rays at all (the landmark that
/// sits deeper on its own ray pins the depth).
inline RayedCertificate certify_resolving_rayed(const RayedGraph& rg,
                                                std::vector<RayedVertex> landmarks,
                                                int min_window = -1) {
    if (landmarks.empty()) throw EmptyLandmarkSet("landmark set must be nonempty");
    std::sort(landmarks.begin(), landmarks.end());
    landmarks.erase(std::unique(landmarks.begin(), landmarks.end()), landmarks.end());
    for (const auto& x : landmarks) rg.check(x);

    RayedCertificate cert;
    cert.landmarks = landmarks;

    int max_depth = 0;
    int landmark_ecc = 0;
    for (const auto& x : landmarks) {
        if (!x.is_core()) max_depth = std::max(max_depth, x.depth);
        for (int c = 0; c < rg.core().n(); ++c)
            landmark_ecc = std::max(landmark_ecc, rg.distance(RayedVertex::core(c), x));
    }
    const int diam = rg.core().n() > 1 ? rg.core().diameter() : 0;
    cert.window = std::max(max_depth + diam + landmark_ecc + 1, min_window);

    for (int r = 0; r < rg.ray_count(); ++r) {
        const int i0 = stabilization_index(rg, r, landmarks);
        cert.stabilization.push_back(i0);
        const RayedVertex u0 =
            i0 == 0 ? RayedVertex::core(rg.attachment(r)) : RayedVertex::ray(r, i0);
        std::vector<int> base = rayed_vector(rg, u0, landmarks);
        for (int& x : base) x -= i0;
        cert.ray_bases.push_back(std::move(base));
    }

    // deep-deep pairs across distinct rays
    for (int p = 0; p < rg.ray_count() && !cert.unresolved; ++p) {
        for (int q = p + 1; q < rg.ray_count(); ++q) {
            int delta;
            if (!detail::constant_difference(cert.ray_bases[p], cert.ray_bases[q], delta))
                continue;
            // c_P + dp = c_Q + dq with dp - dq = delta, both past stabilization
            const int dp = std::max(cert.stabilization[p] + 1, cert.stabilization[q] + delta + 1);
            const int dq = dp - delta;
            auto a = RayedVertex::ray(p, dp);
            auto b = RayedVertex::ray(q, dq);
            if (rayed_vector(rg, a, landmarks) != rayed_vector(rg, b, landmarks))
                throw InternalVerificationFailure("deep-pair witness failed re-verification");
            cert.unresolved = {a, b};
            break;
        }
    }
    if (cert.unresolved) return cert;

    // everything else lives inside the window
    const Truncation tr = truncate(rg, cert.window);
    std::vector<int> ids(static_cast<size_t>(tr.graph.n()));
    for (int i = 0; i < tr.graph.n(); ++i) ids[i] = i;
    auto collision = detail::smallest_collision(ids, [&](int id) {
        const RayedVertex v = tr.from_id(id);
        return rayed_vector(rg, v, landmarks);
    });
    if (collision)
        cert.unresolved = {tr.from_id(collision->u), tr.from_id(collision->v)};
    return cert;
}

/// Certified lower bound on beta: rays sharing an attachment vertex have
/// identical distance profiles seen from outside, so any resolving set must
/// hit all but one ray in each such class. Reported strictly as a bound.
inline int rayed_lower_bound(const RayedGraph& rg) {
    if (rg.ray_count() < 2) throw TooFewRays("lower bound needs at least 2 rays");
    std::vector<int> per_vertex(static_cast<size_t>(rg.core().n()), 0);
    for (int a : rg.attachments()) ++per_vertex[a];
    int bound = 0;
    for (int c : per_vertex) bound += std::max(c - 1, 0);
    return std::max(bound, 1);
}

inline int count_disjoint_rays(const RayedGraph& rg) { return rg.ray_count(); }

/// Uniform degree bound: every vertex degree is at most
/// max(max core degree + rays attached there, 2).
inline int ulf_bound(const RayedGraph& rg) {
    int m = 0;
    for (int c = 0; c < rg.core().n(); ++c)
        m = std::max(m, rg.core().degree(c) + rg.rays_at(c));
    if (rg.ray_count() > 0) m = std::max(m, 2); // interior ray vertices have degree 2
    return m;
}

// ---------------------------------------------------------------------------
// Infinite comb: spine u_0,u_1,... with one pendant leaf v_i per spine vertex.
// No finite landmark set resolves it; the refuter below produces the witness.

/// Spine or tooth vertex of the comb.
struct CombVertex {
    bool tooth = false;
    int index = 0;

    static CombVertex spine(int i) { return {false, i}; }
    static CombVertex leaf(int i) { return {true, i}; }

    friend auto operator<=>(const CombVertex&, const CombVertex&) = default;
};

inline std::string to_string(const CombVertex& v) {
    return (v.tooth ? "v:" : "u:") + std::to_string(v.index);
}

/// Truncated comb with spine u_0..u_n and teeth v_0..v_n. Spine vertex u_i
/// has id i, tooth v_i has id n+1+i.
inline FiniteGraph make_comb(int spine_len) {
    if (spine_len < 1) throw InvalidOrder("comb needs spine length >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < spine_len; ++i) edges.emplace_back(i, i + 1);
    for (int i = 0; i <= spine_len; ++i) edges.emplace_back(i, spine_len + 1 + i);
    return build_graph(2 * (spine_len + 1), edges);
}

inline int comb_id(int spine_len, const CombVertex& v) {
    return v.tooth ? spine_len + 1 + v.index : v.index;
}

/// Witness that a finite set S cannot resolve the infinite comb: with
/// k = 1 + max index in S, every landmark sits left of u_k, so u_{k+1} and
/// v_k get equal distances to all of S. The pair is re-verified on a
/// truncation before returning.
inline std::pair<CombVertex, CombVertex> comb_refute(const std::vector<CombVertex>& s) {
    int k = 0;
    for (const auto& v : s) {
        if (v.index < 0) throw InvalidVertex("comb index must be >= 0");
        k = std::max(k, v.index + 1);
    }
    const auto a = CombVertex::spine(k + 1);
    const auto b = CombVertex::leaf(k);
    const int span = k + 2;
    const FiniteGraph comb = make_comb(span);
    for (const auto& w : s) {
        const int wid = comb_id(span, w);
        if (comb.distance(wid, comb_id(span, a)) != comb.distance(wid, comb_id(span, b)))
            throw InternalVerificationFailure("comb witness failed re-verification");
    }
    return {a, b};
}

} // namespace mdim

#endif
