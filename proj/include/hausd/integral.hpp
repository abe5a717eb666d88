#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "hausd/audit.hpp"
#include "hausd/expr.hpp"
#include "hausd/metric_space.hpp"

namespace hausd {

/// A finite carrier with strictly positive weights; integration over it is
/// the weighted sum. Zero-weight points are rejected rather than carried
/// along as null sets.
template <class S>
struct DiscreteMeasureSpace {
    std::vector<std::string> labels;
    std::vector<S> weights;

    DiscreteMeasureSpace(std::vector<std::string> l, std::vector<S> w)
        : labels(std::move(l)), weights(std::move(w)) {
        if (labels.empty() || labels.size() != weights.size())
            throw std::invalid_argument("measure space: label/weight mismatch");
        for (const S& v : weights)
            if (!(v > S(0))) throw std::invalid_argument("measure space: weights must be strictly positive");
    }

    static DiscreteMeasureSpace uniform(std::size_t n, std::string prefix = "y") {
        std::vector<std::string> l(n);
        for (std::size_t i = 0; i < n; ++i) l[i] = prefix + std::to_string(i);
        return DiscreteMeasureSpace(std::move(l), std::vector<S>(n, S(1)));
    }

    int size() const { return static_cast<int>(labels.size()); }
    S total() const {
        S acc(0);
        for (const S& v : weights) acc = acc + v;
        return acc;
    }
};

/// An indexed family of points: a total map from a measure-space carrier into
/// a finite metric space. Its unordering is the image as a point set.
template <class S>
struct IndexedSet {
    const FiniteMetricSpace<S>* X;
    const DiscreteMeasureSpace<S>* Y;
    std::vector<int> map;  // Y carrier -> point index

    IndexedSet(const FiniteMetricSpace<S>* x, const DiscreteMeasureSpace<S>* y, std::vector<int> f)
        : X(x), Y(y), map(std::move(f)) {
        if (X == nullptr || Y == nullptr) throw std::invalid_argument("IndexedSet: null space");
        if (map.size() != static_cast<std::size_t>(Y->size()))
            throw std::invalid_argument("IndexedSet: map must be total on the index carrier");
        for (int v : map)
            if (v < 0 || v >= X->size()) throw std::invalid_argument("IndexedSet: image index out of range");
    }
};

/// The unordering map: an indexed family collapses to its image.
template <class S>
PointSet<S> unorder(const IndexedSet<S>& f) {
    return PointSet<S>(f.X, f.map);
}

template <class S>
S uniform_metric(const IndexedSet<S>& f, const IndexedSet<S>& g) {
    if (f.X != g.X) throw std::invalid_argument("uniform_metric: different ambient spaces");
    if (f.Y != g.Y) throw std::invalid_argument("uniform_metric: different index sets");
    return uniform_metric(*f.X, f.map, g.map);
}

/// Finite integer exponent or infinity.
struct PExp {
    bool inf = false;
    int p = 1;

    static PExp finite(int p) {
        if (p < 1) throw std::invalid_argument("exponent must be >= 1");
        return PExp{false, p};
    }
    static PExp infinite() { return PExp{true, 0}; }
    static PExp parse(const std::string& s) {
        if (s == "inf" || s == "infinity") return infinite();
        return finite(std::stoi(s));
    }
};

namespace detail {
template <class S>
void require_measure_on(const DiscreteMeasureSpace<S>& nu, const FiniteMetricSpace<S>& X) {
    if (nu.size() != X.size()) throw std::invalid_argument("measure carrier does not match the space");
}
}  // namespace detail

/// The p-th power of the L^p integral distance (the weighted sum before the
/// root): sum over x of |dist(x,A) - dist(x,B)|^p rho(x) nu(x), with rho cut
/// off to A ∪ B. The formula depends only on the images, so the set-level
/// form is primary. Exact on rational inputs.
template <class S>
S lp_set_power_sum(const PointSet<S>& A, const PointSet<S>& B, const std::vector<S>& nu_weights,
                   const std::vector<S>& rho, int p) {
    require_same_space(A, B);
    const auto& X = A.space();
    if (nu_weights.size() != static_cast<std::size_t>(X.size()) || rho.size() != nu_weights.size())
        throw std::invalid_argument("lp distance: nu and rho must weight every ambient point");
    for (const S& v : rho)
        if (!(v > S(0))) throw std::invalid_argument("rho must be strictly positive");
    if (p < 1) throw std::invalid_argument("exponent must be >= 1");
    S acc(0);
    for (int x = 0; x < X.size(); ++x) {
        if (!A.contains(x) && !B.contains(x)) continue;  // chi_{A u B}
        const S gap = num::abs_val(dist_point_set(x, A) - dist_point_set(x, B));
        acc = acc + num::int_pow(gap, p) * rho[x] * nu_weights[x];
    }
    return acc;
}

template <class S>
S lp_set_distance(const PointSet<S>& A, const PointSet<S>& B, const std::vector<S>& nu_weights,
                  const std::vector<S>& rho, PExp p) {
    if (p.inf) {
        require_same_space(A, B);
        S best(0);
        for (int x = 0; x < A.space().size(); ++x)
            best = std::max(best, num::abs_val(dist_point_set(x, A) - dist_point_set(x, B)));
        return best;
    }
    return num::root(lp_set_power_sum(A, B, nu_weights, rho, p.p), p.p);
}

template <class S>
S lp_integral_power_sum(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                        const std::vector<S>& rho, int p) {
    if (f.X != g.X) throw std::invalid_argument("lp distance: different ambient spaces");
    detail::require_measure_on(nu, *f.X);
    return lp_set_power_sum(unorder(f), unorder(g), nu.weights, rho, p);
}

/// L^p(X,nu)-integral distance; p = infinity is the true ambient max, which
/// recovers the Hausdorff distance exactly.
template <class S>
S lp_integral_distance(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                       const std::vector<S>& rho, PExp p) {
    if (f.X != g.X) throw std::invalid_argument("lp distance: different ambient spaces");
    if (!p.inf) detail::require_measure_on(nu, *f.X);
    return lp_set_distance(unorder(f), unorder(g), nu.weights, rho, p);
}

/// The p-th power of the Lambda bound: integral of rho over the union of
/// images.
template <class S>
S lambda_power_sum(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                   const std::vector<S>& rho) {
    if (f.X != g.X) throw std::invalid_argument("lambda bound: different ambient spaces");
    detail::require_measure_on(nu, *f.X);
    const PointSet<S> qf = unorder(f);
    const PointSet<S> qg = unorder(g);
    S acc(0);
    for (int x = 0; x < f.X->size(); ++x)
        if (qf.contains(x) || qg.contains(x)) acc = acc + rho[x] * nu.weights[x];
    return acc;
}

/// Lambda_{fg}(p), the factor bounding the L^p distance by the uniform one.
template <class S>
S lambda_bound(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
               const std::vector<S>& rho, int p) {
    if (p < 1) throw std::invalid_argument("exponent must be >= 1");
    return num::root(lambda_power_sum(f, g, nu, rho), p);
}

// ---------------------------------------------------------------------------
// Coupled (kernel) distances

/// A coupling kernel c(x,y,y') >= 0 for one ordered pair of indexed sets.
template <class S>
struct Kernel {
    int nx = 0;
    int ny = 0;
    std::vector<S> c;  // x-major, then y, then y'

    Kernel() = default;
    Kernel(int x, int y, std::vector<S> values) : nx(x), ny(y), c(std::move(values)) {
        if (c.size() != static_cast<std::size_t>(nx) * ny * ny)
            throw std::invalid_argument("kernel: value count mismatch");
        for (const S& v : c)
            if (v < S(0)) throw std::invalid_argument("kernel: negative value");
    }

    const S& at(int x, int y, int yp) const { return c[(static_cast<std::size_t>(x) * ny + y) * ny + yp]; }
    S& at(int x, int y, int yp) { return c[(static_cast<std::size_t>(x) * ny + y) * ny + yp]; }
};

/// Kernels stored per ordered pair of parameterization ids. Keying by the
/// parameterization (not by the image) makes well-definedness a checkable
/// property rather than an assumption.
template <class S>
struct KernelFamily {
    std::map<std::pair<int, int>, Kernel<S>> by_pair;

    const Kernel<S>& at(int fid, int gid) const {
        auto it = by_pair.find({fid, gid});
        if (it == by_pair.end())
            throw std::invalid_argument("kernel family: missing kernel for pair (" + std::to_string(fid) + "," +
                                        std::to_string(gid) + ")");
        return it->second;
    }
    bool has(int fid, int gid) const { return by_pair.count({fid, gid}) > 0; }
};

/// The symmetric difference of the two images, as ambient-point flags.
template <class S>
std::vector<bool> image_symmetric_difference(const IndexedSet<S>& f, const IndexedSet<S>& g) {
    const PointSet<S> qf = unorder(f);
    const PointSet<S> qg = unorder(g);
    std::vector<bool> delta(f.X->size(), false);
    for (int x = 0; x < f.X->size(); ++x) delta[x] = qf.contains(x) != qg.contains(x);
    return delta;
}

/// The canonical fixture kernel: the indicator of the image symmetric
/// difference in x, scaled by 1/mu(Y). Satisfies the support, positivity and
/// marginal conditions for any pair.
template <class S>
Kernel<S> uniform_kernel(const IndexedSet<S>& f, const IndexedSet<S>& g) {
    if (f.Y != g.Y) throw std::invalid_argument("uniform_kernel: different index sets");
    const auto delta = image_symmetric_difference(f, g);
    const int nx = f.X->size();
    const int ny = f.Y->size();
    const S scale = S(1) / f.Y->total();
    std::vector<S> c(static_cast<std::size_t>(nx) * ny * ny, S(0));
    Kernel<S> k(nx, ny, std::move(c));
    for (int x = 0; x < nx; ++x) {
        if (!delta[x]) continue;
        for (int y = 0; y < ny; ++y)
            for (int yp = 0; yp < ny; ++yp) k.at(x, y, yp) = scale;
    }
    return k;
}

/// The p-th power of the coupled integral distance: the triple weighted sum
/// of |d(x,f(y)) - d(x,g(y'))|^p against the kernel and both measures.
template <class S>
S coupled_power_sum(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                    const DiscreteMeasureSpace<S>& mu, const Kernel<S>& kernel, int p) {
    if (f.X != g.X) throw std::invalid_argument("coupled distance: different ambient spaces");
    if (f.Y != g.Y) throw std::invalid_argument("coupled distance: different index sets");
    detail::require_measure_on(nu, *f.X);
    if (mu.size() != f.Y->size()) throw std::invalid_argument("coupled distance: mu does not match Y");
    if (kernel.nx != f.X->size() || kernel.ny != f.Y->size())
        throw std::invalid_argument("coupled distance: kernel shape mismatch");
    if (p < 1) throw std::invalid_argument("exponent must be >= 1");
    const auto& X = *f.X;
    S acc(0);
    for (int x = 0; x < X.size(); ++x)
        for (int y = 0; y < f.Y->size(); ++y)
            for (int yp = 0; yp < f.Y->size(); ++yp) {
                const S& cval = kernel.at(x, y, yp);
                if (cval == S(0)) continue;
                const S gap = num::abs_val(X.d(x, f.map[y]) - X.d(x, g.map[yp]));
                acc = acc + num::int_pow(gap, p) * cval * nu.weights[x] * mu.weights[y] * mu.weights[yp];
            }
    return acc;
}

template <class S>
S coupled_integral_distance(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                            const DiscreteMeasureSpace<S>& mu, const Kernel<S>& kernel, int p) {
    return num::root(coupled_power_sum(f, g, nu, mu, kernel, p), p);
}

/// Pointwise verification of the kernel conditions: support on the image
/// symmetric difference (i), strict positivity there (ii), both marginal
/// bounds (iii)/(iv), and the chaining bound (v) on each supplied triple of
/// parameterization ids. Violations carry (x,y,y') witnesses.
template <class S>
AxiomReport check_kernel_conditions(const KernelFamily<S>& family, const std::vector<IndexedSet<S>>& params,
                                    const DiscreteMeasureSpace<S>& mu,
                                    const std::vector<std::array<int, 3>>& triples,
                                    const S& tol = num::default_tolerance<S>()) {
    AxiomReport rep;
    rep.subject = "kernel conditions";

    auto wit = [](int x, int y, int yp) {
        return "(x=" + std::to_string(x) + ",y=" + std::to_string(y) + ",y'=" + std::to_string(yp) + ")";
    };

    for (const auto& [key, k] : family.by_pair) {
        const auto& f = params.at(key.first);
        const auto& g = params.at(key.second);
        const std::string pair_tag = "c(" + std::to_string(key.first) + "," + std::to_string(key.second) + ") ";
        const auto delta = image_symmetric_difference(f, g);
        bool delta_nonempty = std::find(delta.begin(), delta.end(), true) != delta.end();
        for (int x = 0; x < k.nx; ++x)
            for (int y = 0; y < k.ny; ++y)
                for (int yp = 0; yp < k.ny; ++yp) {
                    ++rep.checks;
                    if (!delta[x] && k.at(x, y, yp) > S(0))
                        rep.add("(i) support", pair_tag + wit(x, y, yp), "kernel positive off the symmetric difference");
                    if (delta_nonempty && delta[x] && !(k.at(x, y, yp) > S(0)))
                        rep.add("(ii) positivity", pair_tag + wit(x, y, yp), "kernel vanishes on the symmetric difference");
                }
        for (int x = 0; x < k.nx; ++x) {
            for (int yp = 0; yp < k.ny; ++yp) {
                S m(0);
                for (int y = 0; y < k.ny; ++y) m = m + k.at(x, y, yp) * mu.weights[y];
                ++rep.checks;
                if (m > S(1) + tol) rep.add("(iii) y-marginal", pair_tag + wit(x, -1, yp), num::str(m) + " > 1");
            }
            for (int y = 0; y < k.ny; ++y) {
                S m(0);
                for (int yp = 0; yp < k.ny; ++yp) m = m + k.at(x, y, yp) * mu.weights[yp];
                ++rep.checks;
                if (m > S(1) + tol) rep.add("(iv) y'-marginal", pair_tag + wit(x, y, -1), num::str(m) + " > 1");
            }
        }
    }

    for (const auto& t : triples) {
        const auto& kfh = family.at(t[0], t[1]);
        const auto& khg = family.at(t[1], t[2]);
        const auto& kfg = family.at(t[0], t[2]);
        const std::string tag =
            "triple (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ") ";
        for (int x = 0; x < kfg.nx; ++x)
            for (int y = 0; y < kfg.ny; ++y)
                for (int yp = 0; yp < kfg.ny; ++yp) {
                    ++rep.checks;
                    S chain(0);
                    for (int ypp = 0; ypp < kfg.ny; ++ypp)
                        chain = chain + kfh.at(x, y, ypp) * khg.at(x, ypp, yp) * mu.weights[ypp];
                    if (chain + tol < kfg.at(x, y, yp))
                        rep.add("(v) chaining", tag + wit(x, y, yp),
                                num::str(chain) + " < " + num::str(kfg.at(x, y, yp)));
                }
    }
    return rep;
}

/// Weighted variant on a coordinate space: adds the translation term
/// beta * d(x - f(y), x - g(y'))^p to alpha times the usual integrand. With
/// alpha = 1 and beta = 0 it reduces to the coupled distance.
template <class S, class WeightA, class WeightB>
S weighted_integral_distance(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                             const DiscreteMeasureSpace<S>& mu, const Kernel<S>& kernel, const WeightA& alpha,
                             const WeightB& beta, int p, PointMetric coord_metric) {
    if (f.X != g.X || f.Y != g.Y) throw std::invalid_argument("weighted distance: mismatched spaces");
    const auto& X = *f.X;
    if (!X.has_coords())
        throw std::invalid_argument("weighted distance: ambient space carries no coordinates");
    detail::require_measure_on(nu, X);
    if (p < 1) throw std::invalid_argument("exponent must be >= 1");
    const std::size_t dim = X.coords(0).size();
    auto translated = [&](int x, int pt) {
        std::vector<S> out(dim);
        for (std::size_t k = 0; k < dim; ++k) out[k] = X.coords(x)[k] - X.coords(pt)[k];
        return out;
    };
    S acc(0);
    for (int x = 0; x < X.size(); ++x)
        for (int y = 0; y < f.Y->size(); ++y)
            for (int yp = 0; yp < f.Y->size(); ++yp) {
                const S& cval = kernel.at(x, y, yp);
                if (cval == S(0)) continue;
                const S gap = num::abs_val(X.d(x, f.map[y]) - X.d(x, g.map[yp]));
                const S shift =
                    FiniteMetricSpace<S>::coord_distance(translated(x, f.map[y]), translated(x, g.map[yp]), coord_metric);
                const S term = alpha(x, y, yp) * num::int_pow(gap, p) + beta(x, y, yp) * num::int_pow(shift, p);
                acc = acc + term * cval * nu.weights[x] * mu.weights[y] * mu.weights[yp];
            }
    return num::root(acc, p);
}

/// Extended distance F[ integral of G(d(x,f(y)), d(x,g(y')), d(f(y),g(y'))) ].
/// F and G come from the whitelisted expression grammar; negative values of
/// either are rejected at evaluation time. In general only a semimetric.
template <class S>
S extended_distance(const IndexedSet<S>& f, const IndexedSet<S>& g, const DiscreteMeasureSpace<S>& nu,
                    const DiscreteMeasureSpace<S>& mu, const Kernel<S>& kernel, const Expr<S>& F, const Expr<S>& G) {
    if (f.X != g.X || f.Y != g.Y) throw std::invalid_argument("extended distance: mismatched spaces");
    const auto& X = *f.X;
    detail::require_measure_on(nu, X);
    S acc(0);
    for (int x = 0; x < X.size(); ++x)
        for (int y = 0; y < f.Y->size(); ++y)
            for (int yp = 0; yp < f.Y->size(); ++yp) {
                const S& cval = kernel.at(x, y, yp);
                if (cval == S(0)) continue;
                const S gval = G.eval({X.d(x, f.map[y]), X.d(x, g.map[yp]), X.d(f.map[y], g.map[yp])});
                if (gval < S(0)) throw std::invalid_argument("extended distance: G produced a negative value");
                acc = acc + gval * cval * nu.weights[x] * mu.weights[y] * mu.weights[yp];
            }
    const S out = F.eval({acc, S(0), S(0)});
    if (out < S(0)) throw std::invalid_argument("extended distance: F produced a negative value");
    return out;
}

/// Enumerates alternative parameterizations with the same images (all
/// surjections onto each image, capped by the budget) and reports the value
/// spread of the supplied distance under reparameterization. Zero spread
/// certifies well-definedness on the explored portion.
template <class S>
AxiomReport check_welldefined(const std::function<DistValue<S>(const IndexedSet<S>&, const IndexedSet<S>&)>& dist,
                              const IndexedSet<S>& f, const IndexedSet<S>& g, int budget,
                              const S& tol = num::default_tolerance<S>()) {
    AxiomReport rep;
    rep.subject = "well-definedness";
    auto surjections = [](const IndexedSet<S>& h, int cap) {
        std::vector<std::vector<int>> out;
        std::vector<int> image = unorder(h).members();
        const int ni = static_cast<int>(image.size());
        const int ny = h.Y->size();
        std::vector<int> pick(ny, 0);
        while (static_cast<int>(out.size()) < cap) {
            std::vector<bool> hit(ni, false);
            for (int y = 0; y < ny; ++y) hit[pick[y]] = true;
            if (std::find(hit.begin(), hit.end(), false) == hit.end()) {
                std::vector<int> m(ny);
                for (int y = 0; y < ny; ++y) m[y] = image[pick[y]];
                out.push_back(std::move(m));
            }
            int pos = ny - 1;
            while (pos >= 0 && ++pick[pos] == ni) pick[pos--] = 0;
            if (pos < 0) break;
        }
        return out;
    };
    const int cap = std::max(1, budget);
    const auto fs = surjections(f, cap);
    const auto gs = surjections(g, cap);
    bool seen = false;
    S lo(0), hi(0);
    std::string lo_wit, hi_wit;
    int evals = 0;
    for (const auto& fm : fs)
        for (const auto& gm : gs) {
            if (evals >= cap) break;
            ++evals;
            ++rep.checks;
            IndexedSet<S> h1(f.X, f.Y, fm);
            IndexedSet<S> h2(g.X, g.Y, gm);
            const DistValue<S> v = dist(h1, h2);
            if (!v.ok()) {
                rep.add("undefined", "reparameterization", v.note);
                continue;
            }
            if (!seen || v.value < lo) { lo = v.value; lo_wit = "f'=" + std::to_string(evals); }
            if (!seen || v.value > hi) { hi = v.value; hi_wit = "f'=" + std::to_string(evals); }
            seen = true;
        }
    if (seen && hi - lo > tol)
        rep.add("well-defined", lo_wit + " vs " + hi_wit,
                "value spread " + num::str(hi - lo) + " across reparameterizations");
    return rep;
}

}  // namespace hausd
