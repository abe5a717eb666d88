#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hausd/audit.hpp"
#include "hausd/metric_space.hpp"

namespace hausd {

namespace detail {

/// Distortion of the correspondence graph(phi) ∪ graph(psi)^T: the largest
/// discrepancy |d_X(x,x') - d_Y(y,y')| over its pairs.
template <class S>
S union_distortion(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y, const std::vector<int>& phi,
                   const std::vector<int>& psi) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(phi.size() + psi.size());
    for (int i = 0; i < static_cast<int>(phi.size()); ++i) pairs.push_back({i, phi[i]});
    for (int j = 0; j < static_cast<int>(psi.size()); ++j) pairs.push_back({psi[j], j});
    S worst(0);
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const S gap = num::abs_val(X.d(pairs[a].first, pairs[b].first) - Y.d(pairs[a].second, pairs[b].second));
            worst = std::max(worst, gap);
        }
    return worst;
}

template <class S>
bool next_tuple(std::vector<int>& t, int radix) {
    int pos = static_cast<int>(t.size()) - 1;
    while (pos >= 0 && ++t[pos] == radix) t[pos--] = 0;
    return pos >= 0;
}

}  // namespace detail

/// Exact Gromov-Hausdorff distance by exhausting minimal complete
/// correspondences (a function X -> Y overlaid with a function Y -> X; every
/// complete relation contains such a union, and shrinking a correspondence
/// never increases distortion). Intended for very small spaces.
template <class S>
S gh_distance_exhaustive(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y) {
    if (X.size() * Y.size() > 30) throw std::invalid_argument("gh exhaustive mode limited to 30 cells");
    std::vector<int> phi(X.size(), 0);
    std::optional<S> best;
    do {
        std::vector<int> psi(Y.size(), 0);
        do {
            const S dis = detail::union_distortion(X, Y, phi, psi);
            if (!best || dis < *best) best = dis;
        } while (detail::next_tuple<S>(psi, X.size()));
    } while (detail::next_tuple<S>(phi, Y.size()));
    return *best / S(2);
}

/// Exact Gromov-Hausdorff distance by threshold search: the optimal
/// distortion is one of the pairwise discrepancies, and feasibility of a
/// given level is decided by backtracking over phi/psi assignments.
template <class S>
S gh_distance_threshold(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y) {
    const int nx = X.size(), ny = Y.size();
    std::vector<S> candidates{S(0)};
    for (int i = 0; i < nx; ++i)
        for (int k = 0; k < nx; ++k)
            for (int j = 0; j < ny; ++j)
                for (int l = 0; l < ny; ++l) candidates.push_back(num::abs_val(X.d(i, k) - Y.d(j, l)));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto feasible = [&](const S& r) {
        std::vector<std::pair<int, int>> chosen;  // (x, y) pairs so far
        auto compatible = [&](int x, int y) {
            for (const auto& [px, py] : chosen)
                if (num::abs_val(X.d(x, px) - Y.d(y, py)) > r) return false;
            return true;
        };
        std::function<bool(int)> place_psi = [&](int j) -> bool {
            if (j == ny) return true;
            for (int x = 0; x < nx; ++x)
                if (compatible(x, j)) {
                    chosen.push_back({x, j});
                    if (place_psi(j + 1)) return true;
                    chosen.pop_back();
                }
            return false;
        };
        std::function<bool(int)> place_phi = [&](int i) -> bool {
            if (i == nx) return place_psi(0);
            for (int y = 0; y < ny; ++y)
                if (compatible(i, y)) {
                    chosen.push_back({i, y});
                    if (place_phi(i + 1)) return true;
                    chosen.pop_back();
                }
            return false;
        };
        return place_phi(0);
    };

    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (feasible(candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return candidates[lo] / S(2);
}

/// Gromov-Hausdorff distance between finite metric spaces: exhaustive on
/// small products, threshold search beyond (both exact).
template <class S>
S gh_distance(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y, int cell_guard = 64) {
    if (X.size() * Y.size() > cell_guard)
        throw std::invalid_argument("gh_distance: size guard exceeded");
    if (X.size() * Y.size() <= 20) return gh_distance_exhaustive(X, Y);
    return gh_distance_threshold(X, Y);
}

/// Exact isometry test by backtracking over point bijections.
template <class S>
bool isometric(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y) {
    if (X.size() != Y.size()) return false;
    const int n = X.size();
    std::vector<int> perm;
    std::vector<bool> used(n, false);
    std::function<bool()> place = [&]() -> bool {
        const int i = static_cast<int>(perm.size());
        if (i == n) return true;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k) ok = X.d(i, k) == Y.d(j, perm[k]);
            if (!ok) continue;
            used[j] = true;
            perm.push_back(j);
            if (place()) return true;
            perm.pop_back();
            used[j] = false;
        }
        return false;
    };
    return place();
}

// ---------------------------------------------------------------------------
// Gluing spaces and embedding-based distances

/// Triangle-validity of a candidate gluing: the block matrix (d_X, cross;
/// cross^T, d_Y) must be a pseudometric. Zero cross entries are allowed and
/// mean the two points coincide after gluing; the triangle scan rules out
/// inconsistent identifications.
template <class S>
bool is_valid_gluing(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y,
                     const std::vector<std::vector<S>>& cross) {
    const int nx = X.size(), ny = Y.size();
    if (cross.size() != static_cast<std::size_t>(nx)) return false;
    for (const auto& row : cross) {
        if (row.size() != static_cast<std::size_t>(ny)) return false;
        for (const S& v : row)
            if (v < S(0)) return false;
    }
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            // through a second X point and through a second Y point
            for (int k = 0; k < nx; ++k)
                if (cross[i][j] > X.d(i, k) + cross[k][j] || X.d(i, k) > cross[i][j] + cross[k][j]) return false;
            for (int l = 0; l < ny; ++l)
                if (cross[i][j] > cross[i][l] + Y.d(l, j) || Y.d(j, l) > cross[i][j] + cross[i][l]) return false;
        }
    return true;
}

/// A gluing realized as a genuine metric space: points at cross-distance
/// zero are identified (the pseudometric quotient), and the two embeddings
/// are recorded as index maps into the quotient.
template <class S>
struct GluedSpace {
    FiniteMetricSpace<S> Z;
    std::vector<int> x_image;
    std::vector<int> y_image;

    PointSet<S> embedded_x() const { return PointSet<S>(&Z, x_image); }
    PointSet<S> embedded_y() const { return PointSet<S>(&Z, y_image); }
};

template <class S>
GluedSpace<S> glue_spaces(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y,
                          const std::vector<std::vector<S>>& cross) {
    const int nx = X.size(), ny = Y.size();
    std::vector<int> x_image(nx), y_image(ny, -1);
    for (int i = 0; i < nx; ++i) x_image[i] = i;
    std::vector<std::string> labels;
    for (int i = 0; i < nx; ++i) labels.push_back("X:" + X.label(i));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i)
            if (cross[i][j] == S(0)) { y_image[j] = i; break; }
        if (y_image[j] < 0) {
            y_image[j] = static_cast<int>(labels.size());
            labels.push_back("Y:" + Y.label(j));
        }
    }
    const int n = static_cast<int>(labels.size());
    std::vector<std::vector<S>> dmat(n, std::vector<S>(n, S(0)));
    for (int i = 0; i < nx; ++i)
        for (int k = 0; k < nx; ++k) dmat[i][k] = X.d(i, k);
    for (int j = 0; j < ny; ++j) {
        for (int l = 0; l < ny; ++l) dmat[y_image[j]][y_image[l]] = Y.d(j, l);
        for (int i = 0; i < nx; ++i) dmat[i][y_image[j]] = dmat[y_image[j]][i] = cross[i][j];
    }
    for (int i = 0; i < n; ++i) dmat[i][i] = S(0);
    return GluedSpace<S>{FiniteMetricSpace<S>::metric(std::move(labels), std::move(dmat)), std::move(x_image),
                         std::move(y_image)};
}

/// Candidate cross-distance values for auto grids: g evenly spaced levels
/// from half the least positive distance up to the largest distance in
/// either space. The spacing is the advertised grid resolution.
template <class S>
std::vector<S> auto_gluing_levels(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y, int g) {
    if (g < 1) throw std::invalid_argument("auto grid needs at least one level");
    std::optional<S> lo, hi;
    auto scan = [&](const FiniteMetricSpace<S>& sp) {
        for (int i = 0; i < sp.size(); ++i)
            for (int j = i + 1; j < sp.size(); ++j) {
                if (!lo || sp.d(i, j) < *lo) lo = sp.d(i, j);
                if (!hi || sp.d(i, j) > *hi) hi = sp.d(i, j);
            }
    };
    scan(X);
    scan(Y);
    if (!lo) { lo = S(1); hi = S(1); }  // two singletons
    const S start = *lo / S(2);
    std::vector<S> levels;
    if (g == 1) {
        levels.push_back(start);
        return levels;
    }
    const S step = (*hi - start) / S(g - 1);
    for (int i = 0; i < g; ++i) levels.push_back(start + step * S(i));
    return levels;
}

/// Every cross matrix with entries drawn from the level set, triangle
/// filtered. The combinatorial count is guarded.
template <class S>
std::vector<std::vector<std::vector<S>>> gluing_grid(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y,
                                                     const std::vector<S>& levels, long combo_guard = 2000000) {
    const int cells = X.size() * Y.size();
    double combos = std::pow(static_cast<double>(levels.size()), cells);
    if (combos > static_cast<double>(combo_guard))
        throw std::invalid_argument("gluing_grid: level grid too large for this pair of spaces");
    std::vector<std::vector<std::vector<S>>> out;
    std::vector<int> pick(cells, 0);
    do {
        std::vector<std::vector<S>> cross(X.size(), std::vector<S>(Y.size(), S(0)));
        for (int c = 0; c < cells; ++c) cross[c / Y.size()][c % Y.size()] = levels[pick[c]];
        if (is_valid_gluing(X, Y, cross)) out.push_back(std::move(cross));
    } while (detail::next_tuple<S>(pick, static_cast<int>(levels.size())));
    return out;
}

/// A base distance evaluated inside a glued space on the two embedded
/// images.
template <class S>
using EmbedBase = std::function<DistValue<S>(const PointSet<S>&, const PointSet<S>&)>;

template <class S>
struct EmbedResult {
    DistValue<S> distance;
    int best_candidate = -1;  // index into the candidate list
    int valid_candidates = 0;
};

/// Embedding distance over an explicit list of candidate gluings: the least
/// base-distance value between the images of X and Y across all valid
/// candidates.
template <class S>
EmbedResult<S> embed_distance(const FiniteMetricSpace<S>& X, const FiniteMetricSpace<S>& Y,
                              const std::vector<std::vector<std::vector<S>>>& candidates, const EmbedBase<S>& base) {
    EmbedResult<S> out;
    std::optional<S> best;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!is_valid_gluing(X, Y, candidates[c])) continue;
        ++out.valid_candidates;
        const GluedSpace<S> glued = glue_spaces(X, Y, candidates[c]);
        const DistValue<S> v = base(glued.embedded_x(), glued.embedded_y());
        if (!v.ok()) continue;
        if (!best || v.value < *best) {
            best = v.value;
            out.best_candidate = static_cast<int>(c);
        }
    }
    if (!best) {
        out.distance = DistValue<S>::undefined("no valid gluing in the candidate grid");
        return out;
    }
    out.distance = DistValue<S>::of(*best);
    return out;
}

}  // namespace hausd
