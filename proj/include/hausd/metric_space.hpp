#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "hausd/rational.hpp"

namespace hausd {

enum class PointMetric { Euclidean, Manhattan, Chebyshev };

/// A finite metric space: labelled points plus a symmetric distance matrix.
/// The standard factory validates every metric axiom (including all n^3
/// triangle inequalities); `semimetric` skips the triangle check so the
/// conversion pipeline and deliberately broken fixtures can be represented.
template <class S>
class FiniteMetricSpace {
public:
    static FiniteMetricSpace metric(std::vector<std::string> labels, std::vector<std::vector<S>> dmat) {
        FiniteMetricSpace sp(std::move(labels), std::move(dmat));
        sp.validate_basic();
        sp.validate_triangle();
        sp.triangle_checked_ = true;
        return sp;
    }

    static FiniteMetricSpace semimetric(std::vector<std::string> labels, std::vector<std::vector<S>> dmat) {
        FiniteMetricSpace sp(std::move(labels), std::move(dmat));
        sp.validate_basic();
        sp.triangle_checked_ = false;
        return sp;
    }

    /// Builds the distance matrix from coordinate rows. Euclidean requires a
    /// floating-point scalar (square roots); Manhattan and Chebyshev stay
    /// exact on rationals. Coordinates are retained for translation-based
    /// distances.
    static FiniteMetricSpace from_points(std::vector<std::vector<S>> coords, PointMetric kind,
                                         std::vector<std::string> labels = {}) {
        const std::size_t n = coords.size();
        if (n == 0) throw std::invalid_argument("from_points: empty point cloud");
        const std::size_t dim = coords[0].size();
        for (const auto& c : coords)
            if (c.size() != dim) throw std::invalid_argument("from_points: ragged coordinates");
        if (labels.empty()) {
            labels.resize(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
        }
        std::vector<std::vector<S>> dmat(n, std::vector<S>(n, S(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dmat[i][j] = dmat[j][i] = coord_distance(coords[i], coords[j], kind);
        FiniteMetricSpace sp(std::move(labels), std::move(dmat));
        sp.coords_ = std::move(coords);
        sp.validate_basic();
        sp.triangle_checked_ = true;  // induced by a norm
        return sp;
    }

    static S coord_distance(const std::vector<S>& a, const std::vector<S>& b, PointMetric kind) {
        if (a.size() != b.size()) throw std::invalid_argument("coord_distance: dimension mismatch");
        switch (kind) {
            case PointMetric::Euclidean: {
                if constexpr (!std::is_floating_point_v<S>)
                    throw std::invalid_argument("euclidean metric requires the floating-point backend");
                else {
                    S acc(0);
                    for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
                    return std::sqrt(acc);
                }
            }
            case PointMetric::Manhattan: {
                S acc(0);
                for (std::size_t k = 0; k < a.size(); ++k) acc = acc + num::abs_val(a[k] - b[k]);
                return acc;
            }
            case PointMetric::Chebyshev: {
                S acc(0);
                for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, num::abs_val(a[k] - b[k]));
                return acc;
            }
        }
        throw std::logic_error("unreachable");
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const S& d(int i, int j) const { return dmat_[i][j]; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<S>>& dmat() const { return dmat_; }
    bool triangle_checked() const { return triangle_checked_; }

    bool has_coords() const { return !coords_.empty(); }
    const std::vector<S>& coords(int i) const {
        if (!has_coords()) throw std::logic_error("space carries no coordinates");
        return coords_[i];
    }

    int index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (labels_[i] == label) return i;
        throw std::invalid_argument("unknown point label '" + label + "'");
    }

private:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<S>> dmat)
        : labels_(std::move(labels)), dmat_(std::move(dmat)) {}

    void validate_basic() const {
        const std::size_t n = labels_.size();
        if (n == 0) throw std::invalid_argument("metric space needs at least one point");
        if (dmat_.size() != n) throw std::invalid_argument("dmat is not square");
        for (const auto& row : dmat_)
            if (row.size() != n) throw std::invalid_argument("dmat is not square");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(dmat_[i][i] == S(0))) throw std::invalid_argument("dmat diagonal must be zero");
            for (std::size_t j = 0; j < n; ++j) {
                if (!(dmat_[i][j] == dmat_[j][i])) throw std::invalid_argument("dmat must be symmetric");
                if (i != j && !(dmat_[i][j] > S(0)))
                    throw std::invalid_argument("off-diagonal distances must be positive");
            }
        }
    }

    void validate_triangle() const {
        const int n = static_cast<int>(labels_.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (dmat_[i][j] > dmat_[i][k] + dmat_[k][j])
                        throw std::invalid_argument("triangle inequality violated at (" + labels_[i] + "," +
                                                    labels_[j] + "," + labels_[k] + ")");
    }

    std::vector<std::string> labels_;
    std::vector<std::vector<S>> dmat_;
    std::vector<std::vector<S>> coords_;
    bool triangle_checked_ = false;
};

/// A nonempty subset of a space's points (finite, hence closed and bounded).
/// Holds a non-owning pointer to the space, which must outlive the set.
template <class S>
class PointSet {
public:
    PointSet(const FiniteMetricSpace<S>* space, std::vector<int> members) : space_(space), members_(std::move(members)) {
        if (space_ == nullptr) throw std::invalid_argument("PointSet: null space");
        if (members_.empty()) throw std::invalid_argument("PointSet: empty member list");
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        for (int m : members_)
            if (m < 0 || m >= space_->size()) throw std::invalid_argument("PointSet: index out of range");
    }

    const FiniteMetricSpace<S>& space() const { return *space_; }
    const FiniteMetricSpace<S>* space_ptr() const { return space_; }
    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int idx) const { return std::binary_search(members_.begin(), members_.end(), idx); }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }
    friend bool operator!=(const PointSet& a, const PointSet& b) { return !(a == b); }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) out += ",";
            out += space_->label(members_[i]);
        }
        return out + "}";
    }

private:
    const FiniteMetricSpace<S>* space_;
    std::vector<int> members_;
};

template <class S>
void require_same_space(const PointSet<S>& A, const PointSet<S>& B) {
    if (A.space_ptr() != B.space_ptr()) throw std::invalid_argument("point sets live in different spaces");
}

/// dist(x, A) = min over a in A of d(x, a).
template <class S>
S dist_point_set(int x, const PointSet<S>& A) {
    const auto& sp = A.space();
    if (x < 0 || x >= sp.size()) throw std::invalid_argument("dist_point_set: index out of range");
    S best = sp.d(x, A.members()[0]);
    for (std::size_t i = 1; i < A.members().size(); ++i) best = std::min(best, sp.d(x, A.members()[i]));
    return best;
}

/// Closed r-neighbourhood of A inside its ambient space.
template <class S>
PointSet<S> closed_neighborhood(const PointSet<S>& A, const S& r) {
    if (r < S(0)) throw std::invalid_argument("closed_neighborhood: negative radius");
    std::vector<int> hits;
    for (int x = 0; x < A.space().size(); ++x)
        if (!(dist_point_set(x, A) > r)) hits.push_back(x);
    return PointSet<S>(A.space_ptr(), std::move(hits));
}

enum class HdForm { MaxSup, InfRadius, SupUnion, SupAmbient };

/// The Hausdorff distance in any of its four equivalent formulations:
///   MaxSup     max of the two directed sup-min distances;
///   InfRadius  least r with A ∪ B inside the closed r-neighbourhoods of both;
///   SupUnion   sup over A ∪ B of |dist(x,A) - dist(x,B)|;
///   SupAmbient the same sup taken over the whole space.
/// On finite carriers the InfRadius scan ranges over the attained candidate
/// radii {dist(x,A)} ∪ {dist(x,B)}, x in X.
template <class S>
S hausdorff(const PointSet<S>& A, const PointSet<S>& B, HdForm form = HdForm::MaxSup) {
    require_same_space(A, B);
    const auto& sp = A.space();
    switch (form) {
        case HdForm::MaxSup: {
            S best(0);
            for (int a : A.members()) best = std::max(best, dist_point_set(a, B));
            for (int b : B.members()) best = std::max(best, dist_point_set(b, A));
            return best;
        }
        case HdForm::InfRadius: {
            std::vector<S> candidates;
            candidates.reserve(2 * sp.size());
            for (int x = 0; x < sp.size(); ++x) {
                candidates.push_back(dist_point_set(x, A));
                candidates.push_back(dist_point_set(x, B));
            }
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            auto contained = [&](const S& r) {
                for (int x : A.members())
                    if (dist_point_set(x, B) > r) return false;
                for (int x : B.members())
                    if (dist_point_set(x, A) > r) return false;
                return true;
            };
            for (const S& r : candidates)
                if (contained(r)) return r;
            throw std::logic_error("hausdorff: no containing radius found");  // cannot happen
        }
        case HdForm::SupUnion: {
            S best(0);
            auto visit = [&](int x) { best = std::max(best, num::abs_val(dist_point_set(x, A) - dist_point_set(x, B))); };
            for (int a : A.members()) visit(a);
            for (int b : B.members()) visit(b);
            return best;
        }
        case HdForm::SupAmbient: {
            S best(0);
            for (int x = 0; x < sp.size(); ++x)
                best = std::max(best, num::abs_val(dist_point_set(x, A) - dist_point_set(x, B)));
            return best;
        }
    }
    throw std::logic_error("unreachable");
}

/// Uniform distance between two equally-indexed families of points:
/// max over the index set of d(f(y), g(y)).
template <class S>
S uniform_metric(const FiniteMetricSpace<S>& sp, const std::vector<int>& f, const std::vector<int>& g) {
    if (f.size() != g.size()) throw std::invalid_argument("uniform_metric: index sets differ");
    if (f.empty()) throw std::invalid_argument("uniform_metric: empty index set");
    S best(0);
    for (std::size_t y = 0; y < f.size(); ++y) {
        if (f[y] < 0 || f[y] >= sp.size() || g[y] < 0 || g[y] >= sp.size())
            throw std::invalid_argument("uniform_metric: index out of range");
        best = std::max(best, sp.d(f[y], g[y]));
    }
    return best;
}

namespace detail {
template <class S>
void require_square_symmetric(const std::vector<std::vector<S>>& m, bool symmetric) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(m[i][i] == S(0))) throw std::invalid_argument("matrix diagonal must be zero");
        if (symmetric)
            for (std::size_t j = 0; j < n; ++j)
                if (!(m[i][j] == m[j][i])) throw std::invalid_argument("matrix must be symmetric");
    }
}
}  // namespace detail

/// Shortest-chain repair of a semimetric: replaces each entry by the cheapest
/// finite chain between its endpoints. Output is entrywise <= the input and
/// satisfies the triangle inequality (it is the induced pseudometric).
template <class S>
std::vector<std::vector<S>> semimetric_to_pseudometric(const std::vector<std::vector<S>>& ds) {
    detail::require_square_symmetric(ds, /*symmetric=*/true);
    auto out = ds;
    const int n = static_cast<int>(ds.size());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[i][j] = std::min(out[i][j], out[i][k] + out[k][j]);
    return out;
}

enum class SymmetrizeMode { Max, Sum };

/// Symmetrizes a quasimetric by max or sum of the two directed values.
/// The input must already satisfy the (directed) triangle inequality.
template <class S>
std::vector<std::vector<S>> quasimetric_to_metric(const std::vector<std::vector<S>>& dq, SymmetrizeMode mode) {
    detail::require_square_symmetric(dq, /*symmetric=*/false);
    const int n = static_cast<int>(dq.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (dq[i][j] > dq[i][k] + dq[k][j])
                    throw std::invalid_argument("quasimetric_to_metric: directed triangle inequality violated");
    std::vector<std::vector<S>> out(n, std::vector<S>(n, S(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[i][j] = mode == SymmetrizeMode::Max ? std::max(dq[i][j], dq[j][i]) : dq[i][j] + dq[j][i];
    return out;
}

/// Enumerates every nonempty subset of a space as a PointSet, in mask order.
template <class S>
std::vector<PointSet<S>> all_nonempty_subsets(const FiniteMetricSpace<S>& sp) {
    if (sp.size() > 20) throw std::invalid_argument("all_nonempty_subsets: space too large");
    std::vector<PointSet<S>> out;
    const unsigned top = 1u << sp.size();
    for (unsigned mask = 1; mask < top; ++mask) {
        std::vector<int> members;
        for (int i = 0; i < sp.size(); ++i)
            if (mask & (1u << i)) members.push_back(i);
        out.emplace_back(&sp, std::move(members));
    }
    return out;
}

}  // namespace hausd
