#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "hausd/algebra.hpp"
#include "hausd/audit.hpp"
#include "hausd/metric_space.hpp"
#include "hausd/svmetric.hpp"

namespace hausd {

/// Which pairs of finite subsets are joined by a move edge. Complete joins
/// everything; SinglePointSwap changes one element (replace, insert or
/// delete); SinglePointStep only replaces an element by a nearest neighbour
/// in the ground space.
enum class MoveRule { Complete, SinglePointSwap, SinglePointStep };

inline std::string move_rule_name(MoveRule r) {
    switch (r) {
        case MoveRule::Complete: return "complete";
        case MoveRule::SinglePointSwap: return "swap";
        case MoveRule::SinglePointStep: return "step";
    }
    return "?";
}

/// The hyperspace of nonempty subsets of size <= m of a ground space, with
/// move edges weighted by the Hausdorff distance of their endpoints.
template <class S>
struct HyperGraph {
    const FiniteMetricSpace<S>* ground = nullptr;
    int m = 0;
    MoveRule rule = MoveRule::Complete;
    std::vector<SubsetMask> vertices;                     // sorted masks
    std::vector<std::vector<std::pair<int, S>>> adjacency;  // (neighbour, weight)

    int vertex_count() const { return static_cast<int>(vertices.size()); }

    int vertex_index(SubsetMask mask) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), mask);
        if (it == vertices.end() || *it != mask) return -1;
        return static_cast<int>(it - vertices.begin());
    }

    PointSet<S> vertex_set(int v) const {
        std::vector<int> members;
        for (int i = 0; i < ground->size(); ++i)
            if (vertices[v] & (SubsetMask(1) << i)) members.push_back(i);
        return PointSet<S>(ground, std::move(members));
    }

    std::string vertex_label(int v) const { return vertex_set(v).str(); }
};

namespace detail {
template <class S>
S min_positive_distance(const FiniteMetricSpace<S>& sp) {
    std::optional<S> best;
    for (int i = 0; i < sp.size(); ++i)
        for (int j = i + 1; j < sp.size(); ++j)
            if (!best || sp.d(i, j) < *best) best = sp.d(i, j);
    if (!best) throw std::invalid_argument("ground space has a single point; no moves exist");
    return *best;
}
}  // namespace detail

/// Builds the move graph on FS_m of the ground space. Guarded: the vertex
/// count grows as the sum of binomials.
template <class S>
HyperGraph<S> build_hypergraph(const FiniteMetricSpace<S>& ground, int m, MoveRule rule, int vertex_guard = 5000) {
    if (m < 1) throw std::invalid_argument("build_hypergraph: m must be >= 1");
    if (ground.size() > 20) throw std::invalid_argument("build_hypergraph: ground space too large");
    HyperGraph<S> g;
    g.ground = &ground;
    g.m = m;
    g.rule = rule;
    for (SubsetMask mask = 1; mask < (SubsetMask(1) << ground.size()); ++mask)
        if (std::popcount(mask) <= m) g.vertices.push_back(mask);
    if (static_cast<int>(g.vertices.size()) > vertex_guard)
        throw std::invalid_argument("build_hypergraph: vertex guard exceeded (" +
                                    std::to_string(g.vertices.size()) + " subsets)");

    const int n = g.vertex_count();
    g.adjacency.assign(n, {});
    std::optional<S> step;
    if (rule == MoveRule::SinglePointStep) step = detail::min_positive_distance(ground);

    auto connected = [&](SubsetMask a, SubsetMask b) {
        if (rule == MoveRule::Complete) return true;
        const SubsetMask delta = a ^ b;
        const int pa = std::popcount(a), pb = std::popcount(b), pd = std::popcount(delta);
        if (rule == MoveRule::SinglePointSwap) return (pd == 2 && pa == pb) || pd == 1;
        // step: replace one element by a nearest neighbour
        if (pd != 2 || pa != pb) return false;
        const int u = std::countr_zero(delta);
        const int v = std::countr_zero(delta & (delta - 1));
        return ground.d(u, v) == *step;
    };

    for (int i = 0; i < n; ++i) {
        const PointSet<S> A = g.vertex_set(i);
        for (int j = i + 1; j < n; ++j) {
            if (!connected(g.vertices[i], g.vertices[j])) continue;
            const S w = hausdorff(A, g.vertex_set(j));
            g.adjacency[i].push_back({j, w});
            g.adjacency[j].push_back({i, w});
        }
    }
    return g;
}

/// Shortest-path result: the summed weight and the vertex sequence, or a
/// structured "infinite" for disconnected pairs.
template <class S>
struct PathResult {
    DistValue<S> distance;
    std::vector<int> path;  // vertex ids, from source to target
};

/// Minimal move-path length between two vertices: label-setting shortest
/// path (all weights are positive Hausdorff distances).
template <class S>
PathResult<S> dm_distance(const HyperGraph<S>& g, int from, int to) {
    const int n = g.vertex_count();
    if (from < 0 || from >= n || to < 0 || to >= n)
        throw std::invalid_argument("dm_distance: vertex id out of range");
    std::vector<std::optional<S>> dist(n);
    std::vector<int> prev(n, -1);
    std::vector<bool> done(n, false);
    dist[from] = S(0);
    while (true) {
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && dist[i] && (u < 0 || *dist[i] < *dist[u])) u = i;
        if (u < 0) break;
        done[u] = true;
        if (u == to) break;
        for (const auto& [v, w] : g.adjacency[u]) {
            const S cand = *dist[u] + w;
            if (!dist[v] || cand < *dist[v]) {
                dist[v] = cand;
                prev[v] = u;
            }
        }
    }
    PathResult<S> out;
    if (!dist[to]) {
        out.distance = DistValue<S>::infinite();
        return out;
    }
    out.distance = DistValue<S>::of(*dist[to]);
    for (int v = to; v != -1; v = prev[v]) out.path.push_back(v);
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

// ---------------------------------------------------------------------------
// Grid samples

/// A sampled map on the uniform grid {0, 1/k, ..., 1}^n: one ground-point
/// index per grid node, nodes in lexicographic order. The grid has (k+1)^n
/// nodes; the classical bookkeeping index m = k^n is retained alongside.
struct GridSample {
    int k = 1;
    int n = 1;
    std::vector<int> f;

    GridSample(int k_, int n_, std::vector<int> values) : k(k_), n(n_), f(std::move(values)) {
        if (k < 1 || n < 1) throw std::invalid_argument("GridSample: k and n must be >= 1");
        if (f.size() != static_cast<std::size_t>(node_count()))
            throw std::invalid_argument("GridSample: expected one value per grid node");
    }

    long node_count() const {
        long c = 1;
        for (int i = 0; i < n; ++i) c *= (k + 1);
        return c;
    }
    long m_bookkeeping() const {
        long c = 1;
        for (int i = 0; i < n; ++i) c *= k;
        return c;
    }
};

/// The image of a grid sample as a hypergraph vertex. Rejected when the
/// image is larger than the graph's m.
template <class S>
int grid_sample_vertex(const GridSample& gs, const HyperGraph<S>& g) {
    SubsetMask mask = 0;
    for (int v : gs.f) {
        if (v < 0 || v >= g.ground->size()) throw std::invalid_argument("grid sample maps outside the ground space");
        mask |= SubsetMask(1) << v;
    }
    if (std::popcount(mask) > g.m)
        throw std::invalid_argument("grid sample image has " + std::to_string(std::popcount(mask)) +
                                    " points, exceeding m = " + std::to_string(g.m));
    const int idx = g.vertex_index(mask);
    if (idx < 0) throw std::logic_error("grid sample image is not a vertex");
    return idx;
}

// ---------------------------------------------------------------------------
// Path families as a partial algebra; minimal path length as a postmeasure

/// A family of move paths between two vertices, reduced to what the order
/// and the postmeasure see: endpoints and the minimal length. Joins are
/// formal concatenations, whose length adds; equality is the minimal-length
/// class (the path order is a preorder, quotiented like the sup order).
template <class S>
struct PathFamily {
    int from = 0;
    int to = 0;
    S lmin = S(0);

    friend bool operator<(const PathFamily& a, const PathFamily& b) {
        return std::tie(a.from, a.to, a.lmin) < std::tie(b.from, b.to, b.lmin);
    }
    friend bool operator==(const PathFamily& a, const PathFamily& b) {
        return a.from == b.from && a.to == b.to && a.lmin == b.lmin;
    }
};

/// The family of all paths between two vertices, with lmin taken from the
/// exact shortest path. Throws on disconnected pairs.
template <class S>
PathFamily<S> path_family(const HyperGraph<S>& g, int from, int to) {
    const PathResult<S> r = dm_distance(g, from, to);
    if (!r.distance.ok()) throw std::invalid_argument("path_family: vertices are disconnected");
    return PathFamily<S>{from, to, r.distance.value};
}

/// The partial algebra of path families over a connected hypergraph:
/// ordered by minimal length, joined by concatenation. Carrier: one family
/// per ordered vertex pair.
template <class S>
PartialAlgebra<PathFamily<S>> path_family_algebra(const HyperGraph<S>& g) {
    PartialAlgebra<PathFamily<S>> alg;
    alg.name = "path-families(" + move_rule_name(g.rule) + ")";
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = 0; v < g.vertex_count(); ++v) alg.elements.push_back(path_family(g, u, v));
    alg.zero = PathFamily<S>{0, 0, S(0)};
    alg.leq = [](const PathFamily<S>& a, const PathFamily<S>& b) { return !(a.lmin > b.lmin); };
    alg.join = [](const PathFamily<S>& a, const PathFamily<S>& b) {
        return PathFamily<S>{a.from, b.to, a.lmin + b.lmin};
    };
    alg.equiv = [](const PathFamily<S>& a, const PathFamily<S>& b) { return a.lmin == b.lmin; };
    alg.show = [labels = [&] {
        std::vector<std::string> l;
        for (int v = 0; v < g.vertex_count(); ++v) l.push_back(g.vertex_label(v));
        return l;
    }()](const PathFamily<S>& p) {
        std::string tag = p.from < static_cast<int>(labels.size()) && p.to < static_cast<int>(labels.size())
                              ? labels[p.from] + "~>" + labels[p.to]
                              : "?";
        return "Paths(" + tag + "; lmin=" + num::str(p.lmin) + ")";
    };
    return alg;
}

/// Minimal path length as the postmeasure on the path-family algebra.
template <class S>
Postmeasure<PathFamily<S>, S> pathlength_postmeasure(PartialAlgebra<PathFamily<S>> alg) {
    return Postmeasure<PathFamily<S>, S>{"lmin", std::move(alg),
                                         [](const PathFamily<S>& p) { return p.lmin; }};
}

/// The multipath sv-metric: each vertex pair maps to its family of
/// connecting paths. Composing with lmin gives back dm_distance. Families
/// are precomputed, so the returned object does not retain the graph.
template <class S>
SvMetric<PathFamily<S>> path_sv_metric(const HyperGraph<S>& g) {
    const int n = g.vertex_count();
    std::vector<PathFamily<S>> families;
    families.reserve(static_cast<std::size_t>(n) * n);
    std::vector<std::string> labels;
    for (int u = 0; u < n; ++u) {
        labels.push_back(g.vertex_label(u));
        for (int v = 0; v < n; ++v) families.push_back(path_family(g, u, v));
    }
    SvMetric<PathFamily<S>> d;
    d.name = "multipath d_sv(" + move_rule_name(g.rule) + ")";
    d.carrier_size = n;
    d.algebra = path_family_algebra(g);
    d.dmap = [families, n](int u, int v) { return families[static_cast<std::size_t>(u) * n + v]; };
    d.same = index_identity();
    d.show = [labels](int v) { return labels[v]; };
    return d;
}

namespace detail {
/// All simple paths between two vertices, as total weights. DFS with a cap.
template <class S>
void enumerate_simple_paths(const HyperGraph<S>& g, int at, int to, std::vector<bool>& used, const S& acc,
                            std::vector<S>& lengths, std::size_t cap) {
    if (lengths.size() >= cap) return;
    if (at == to) {
        lengths.push_back(acc);
        return;
    }
    for (const auto& [v, w] : g.adjacency[at]) {
        if (used[v]) continue;
        used[v] = true;
        enumerate_simple_paths(g, v, to, used, S(acc + w), lengths, cap);
        used[v] = false;
    }
}
}  // namespace detail

/// Checks, on concrete enumerated paths, that minimal path length behaves as
/// a postmeasure: lmin is zero exactly on trivial families, the shortest
/// path matches the enumerated minimum, and concatenation is exactly
/// additive in lmin for every chained pair of samples.
template <class S>
AxiomReport check_pathlength_postmeasure(const HyperGraph<S>& g, const std::vector<std::pair<int, int>>& samples,
                                         std::size_t path_cap = 200000) {
    AxiomReport rep;
    rep.subject = "lmin postmeasure on " + move_rule_name(g.rule) + " moves";
    if (g.vertex_count() > 10)
        throw std::invalid_argument("check_pathlength_postmeasure: graph too large for path enumeration");

    auto lmin_enumerated = [&](int u, int v) -> std::optional<S> {
        if (u == v) return S(0);
        std::vector<bool> used(g.vertex_count(), false);
        used[u] = true;
        std::vector<S> lengths;
        detail::enumerate_simple_paths(g, u, v, used, S(0), lengths, path_cap);
        if (lengths.empty()) return std::nullopt;
        return *std::min_element(lengths.begin(), lengths.end());
    };

    for (const auto& [u, v] : samples) {
        ++rep.checks;
        const auto enumerated = lmin_enumerated(u, v);
        const PathResult<S> sp = dm_distance(g, u, v);
        if (!enumerated != !sp.distance.ok()) {
            rep.add("lmin", g.vertex_label(u) + "~>" + g.vertex_label(v), "connectivity disagreement");
            continue;
        }
        if (!enumerated) continue;
        if (!(*enumerated == sp.distance.value))
            rep.add("lmin", g.vertex_label(u) + "~>" + g.vertex_label(v),
                    "enumerated " + num::str(*enumerated) + " vs shortest-path " + num::str(sp.distance.value));
        const bool trivial = u == v;
        if (trivial && !(*enumerated == S(0)))
            rep.add("faithfulness", g.vertex_label(u), "trivial family with positive lmin");
        if (!trivial && *enumerated == S(0))
            rep.add("faithfulness", g.vertex_label(u) + "~>" + g.vertex_label(v), "nontrivial family with lmin 0");
    }

    // additivity over concatenation for every chained pair of samples
    for (const auto& [u, v] : samples)
        for (const auto& [v2, w] : samples) {
            if (v2 != v) continue;
            const auto l1 = lmin_enumerated(u, v);
            const auto l2 = lmin_enumerated(v, w);
            if (!l1 || !l2) continue;
            ++rep.checks;
            // minimal concatenated length: min over pairs of length sums
            std::vector<bool> used1(g.vertex_count(), false);
            used1[u] = true;
            std::vector<S> len1, len2;
            if (u == v) len1.push_back(S(0));
            else detail::enumerate_simple_paths(g, u, v, used1, S(0), len1, path_cap);
            std::vector<bool> used2(g.vertex_count(), false);
            used2[v] = true;
            if (v == w) len2.push_back(S(0));
            else detail::enumerate_simple_paths(g, v, w, used2, S(0), len2, path_cap);
            std::optional<S> best;
            for (const S& a : len1)
                for (const S& b : len2) {
                    const S s = a + b;
                    if (!best || s < *best) best = s;
                }
            if (!best) continue;
            if (!(*best == *l1 + *l2))
                rep.add("additivity",
                        g.vertex_label(u) + "~>" + g.vertex_label(v) + "~>" + g.vertex_label(w),
                        "lmin(concat) = " + num::str(*best) + " vs sum " + num::str(S(*l1 + *l2)));
        }
    return rep;
}

}  // namespace hausd
