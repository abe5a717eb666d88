#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hausd/algebra.hpp"
#include "hausd/audit.hpp"
#include "hausd/metric_space.hpp"

namespace hausd {

/// A metric-like map on a finite carrier valued in a partial algebra instead
/// of the reals. Carrier points are indices; `same` is the carrier identity
/// used by the faithfulness axiom.
template <class E>
struct SvMetric {
    std::string name;
    int carrier_size = 0;
    PartialAlgebra<E> algebra;
    std::function<E(int, int)> dmap;
    std::function<bool(int, int)> same;
    std::function<std::string(int)> show;

    std::string point_label(int i) const { return show ? show(i) : "#" + std::to_string(i); }
};

inline std::function<bool(int, int)> index_identity() {
    return [](int a, int b) { return a == b; };
}

/// Exhaustive verification of the sv-metric axioms: symmetry and
/// faithfulness over all pairs, the algebra-valued triangle inequality
/// d(a,b) <= d(a,c) (+) d(c,b) over all triples.
template <class E>
AxiomReport check_sv_metric(const SvMetric<E>& d) {
    AxiomReport rep;
    rep.subject = d.name;
    const auto& alg = d.algebra;
    const int n = d.carrier_size;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ++rep.checks;
            if (!alg.equiv(d.dmap(i, j), d.dmap(j, i)))
                rep.add("symmetry", "(" + d.point_label(i) + "," + d.point_label(j) + ")");
            const bool zero = alg.equiv(d.dmap(i, j), alg.zero);
            if (d.same(i, j) && !zero)
                rep.add("faithfulness", "(" + d.point_label(i) + "," + d.point_label(j) + ")",
                        "identical points, d = " + alg.label(d.dmap(i, j)));
            if (!d.same(i, j) && zero)
                rep.add("faithfulness", "(" + d.point_label(i) + "," + d.point_label(j) + ")",
                        "distinct points at zero distance");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                ++rep.checks;
                if (!alg.leq(d.dmap(i, j), alg.join(d.dmap(i, k), d.dmap(k, j))))
                    rep.add("triangle",
                            "(" + d.point_label(i) + "," + d.point_label(j) + "," + d.point_label(k) + ")",
                            alg.label(d.dmap(i, j)) + " not below " +
                                alg.label(alg.join(d.dmap(i, k), d.dmap(k, j))));
            }
    return rep;
}

/// Open (eps,d)-ball: carrier points strictly below eps. Requires zero < eps
/// in the strict class order.
template <class E>
std::vector<int> sv_ball(const SvMetric<E>& d, int m, const E& eps) {
    if (!d.algebra.strictly_less(d.algebra.zero, eps))
        throw std::invalid_argument("sv_ball: eps must be strictly above zero");
    std::vector<int> out;
    for (int i = 0; i < d.carrier_size; ++i)
        if (d.algebra.strictly_less(d.dmap(m, i), eps)) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// Finite topologies generated by sv-balls

struct FiniteTopology {
    int carrier_size = 0;
    std::vector<SubsetMask> opens;  // sorted

    bool is_open(SubsetMask s) const { return std::binary_search(opens.begin(), opens.end(), s); }
    bool is_discrete() const { return opens.size() == (std::size_t(1) << carrier_size); }

    /// Confirms closure under union and intersection plus membership of the
    /// empty set and the whole carrier.
    bool verify() const {
        SubsetMask full = carrier_size == 64 ? ~SubsetMask(0) : (SubsetMask(1) << carrier_size) - 1;
        if (!is_open(0) || !is_open(full)) return false;
        for (SubsetMask a : opens)
            for (SubsetMask b : opens)
                if (!is_open(a | b) || !is_open(a & b)) return false;
        return true;
    }
};

/// The topology generated by the (eps,d)-balls for eps drawn from the pool:
/// balls form a subbase, finite intersections the base, unions the opens.
/// Enumeration is exponential in the carrier, hence the size guard.
template <class E>
FiniteTopology sv_topology(const SvMetric<E>& d, const std::vector<E>& eps_pool, int max_carrier = 12) {
    if (eps_pool.empty()) throw std::invalid_argument("sv_topology: empty eps pool");
    if (d.carrier_size > max_carrier) throw std::invalid_argument("sv_topology: carrier exceeds enumeration guard");
    const SubsetMask full = (SubsetMask(1) << d.carrier_size) - 1;

    std::set<SubsetMask> base;
    base.insert(full);  // empty intersection
    for (const E& eps : eps_pool)
        for (int m = 0; m < d.carrier_size; ++m) {
            SubsetMask ball = 0;
            for (int i : sv_ball(d, m, eps)) ball |= SubsetMask(1) << i;
            base.insert(ball);
        }
    while (true) {  // close under pairwise intersection
        std::set<SubsetMask> next = base;
        for (SubsetMask a : base)
            for (SubsetMask b : base) next.insert(a & b);
        if (next.size() == base.size()) break;
        base.swap(next);
    }
    std::set<SubsetMask> opens = base;
    opens.insert(0);
    while (true) {  // close under pairwise union
        std::set<SubsetMask> next = opens;
        for (SubsetMask a : opens)
            for (SubsetMask b : opens) next.insert(a | b);
        if (next.size() == opens.size()) break;
        opens.swap(next);
    }
    FiniteTopology topo;
    topo.carrier_size = d.carrier_size;
    topo.opens.assign(opens.begin(), opens.end());
    return topo;
}

// ---------------------------------------------------------------------------
// The internal (symmetric-difference) sv-metric

/// Symmetric difference as an sv-metric on a family of nonempty subsets of a
/// ground set, valued in the full power-set algebra.
inline SvMetric<SubsetMask> symmetric_difference_sv(std::vector<std::string> ground,
                                                    std::vector<SubsetMask> family) {
    if (family.empty()) throw std::invalid_argument("symmetric_difference_sv: empty carrier family");
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    for (SubsetMask m : family) {
        if (m == 0) throw std::invalid_argument("symmetric_difference_sv: carrier sets must be nonempty");
        if (m >> ground.size()) throw std::invalid_argument("symmetric_difference_sv: set outside ground");
    }
    auto alg = powerset_algebra(ground, full_power_set(ground.size()));
    SvMetric<SubsetMask> d;
    d.name = "symmetric-difference";
    d.carrier_size = static_cast<int>(family.size());
    d.show = [fam = family, showfn = alg.show](int i) { return showfn(fam[i]); };
    d.dmap = [fam = family](int i, int j) { return fam[i] ^ fam[j]; };
    d.same = index_identity();
    d.algebra = std::move(alg);
    return d;
}

// ---------------------------------------------------------------------------
// The two sv-decompositions of the Hausdorff distance

/// d_sv(A,B): the finite set {dist(a,B) : a in A} ∪ {dist(b,A) : b in B},
/// an element of the sup algebra over nonnegative scalars.
template <class S>
ScalarSet<S> dsv_values(const PointSet<S>& A, const PointSet<S>& B) {
    require_same_space(A, B);
    std::vector<S> vals;
    for (int a : A.members()) vals.push_back(dist_point_set(a, B));
    for (int b : B.members()) vals.push_back(dist_point_set(b, A));
    return make_scalar_set(std::move(vals));
}

/// The alternative decomposition value {r>0 : A ∪ B not inside both closed
/// r-neighbourhoods}, canonically represented by its supremum t (the set is
/// the interval (0,t)); t is exactly the least containing radius.
template <class S>
S dsv_complement_threshold(const PointSet<S>& A, const PointSet<S>& B) {
    return hausdorff(A, B, HdForm::InfRadius);
}

/// Joint verification of both decompositions over a corpus of point sets:
/// sup of d_sv equals the Hausdorff distance on every pair, the complement
/// threshold equals it as well, and d_sv satisfies the sup-order triangle
/// inequality under Minkowski sums on every triple.
template <class S>
AxiomReport verify_decomposition(const std::vector<PointSet<S>>& sets, const S& tol = num::default_tolerance<S>()) {
    AxiomReport rep;
    rep.subject = "hausdorff decomposition";
    const int n = static_cast<int>(sets.size());
    if (n < 2) return rep;
    std::vector<std::vector<ScalarSet<S>>> dsv(n);
    std::vector<std::vector<S>> dh(n);
    for (int i = 0; i < n; ++i) {
        dsv[i].resize(n);
        dh[i].resize(n, S(0));
        for (int j = 0; j < n; ++j) {
            dsv[i][j] = dsv_values(sets[i], sets[j]);
            dh[i][j] = hausdorff(sets[i], sets[j]);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ++rep.checks;
            const S sup = dsv[i][j].back();
            if (num::abs_val(sup - dh[i][j]) > tol)
                rep.add("sup-decomposition", "(" + sets[i].str() + "," + sets[j].str() + ")",
                        "sup d_sv = " + num::str(sup) + ", d_H = " + num::str(dh[i][j]));
            const S thr = dsv_complement_threshold(sets[i], sets[j]);
            if (num::abs_val(thr - dh[i][j]) > tol)
                rep.add("threshold-decomposition", "(" + sets[i].str() + "," + sets[j].str() + ")",
                        "threshold = " + num::str(thr) + ", d_H = " + num::str(dh[i][j]));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                ++rep.checks;
                const auto sum = minkowski_sum(dsv[i][k], dsv[k][j]);
                if (dsv[i][j].back() > sum.back() + tol)
                    rep.add("sv-triangle",
                            "(" + sets[i].str() + "," + sets[j].str() + "," + sets[k].str() + ")",
                            "sup " + num::str(dsv[i][j].back()) + " > " + num::str(sum.back()));
            }
    return rep;
}

/// Builds the sup algebra spanned by a corpus of point sets: every d_sv
/// value set plus the zero class representative.
template <class S>
PartialAlgebra<ScalarSet<S>> decomposition_sup_algebra(const std::vector<PointSet<S>>& sets) {
    std::vector<ScalarSet<S>> carrier;
    carrier.push_back(ScalarSet<S>{S(0)});
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) carrier.push_back(dsv_values(sets[i], sets[j]));
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    return sup_algebra(std::move(carrier));
}

/// The d_sv of the decomposition theorem as an SvMetric over a corpus of
/// point sets (carrier identity is set equality, matching the quotient in
/// the faithfulness axiom).
template <class S>
SvMetric<ScalarSet<S>> decomposition_sv_metric(const std::vector<PointSet<S>>& sets) {
    SvMetric<ScalarSet<S>> d;
    d.name = "hausdorff d_sv";
    d.carrier_size = static_cast<int>(sets.size());
    d.algebra = decomposition_sup_algebra(sets);
    d.dmap = [sets](int i, int j) { return dsv_values(sets[i], sets[j]); };
    d.same = [sets](int i, int j) { return sets[i] == sets[j]; };
    d.show = [sets](int i) { return sets[i].str(); };
    return d;
}

// ---------------------------------------------------------------------------
// Composition of a postmeasure with an sv-metric

/// The scalar distance mu ∘ d_sv. When the postmeasure and the sv-metric both
/// pass their axiom checks, the audit of the composition must come back
/// clean. Requires every d_sv value to lie in the postmeasure's carrier (up
/// to element equality).
template <class E, class S>
DistanceFamily<S, int> compose_metric(const Postmeasure<E, S>& pm, const SvMetric<E>& svm) {
    const auto& alg = pm.algebra;
    for (int i = 0; i < svm.carrier_size; ++i)
        for (int j = 0; j < svm.carrier_size; ++j) {
            const E v = svm.dmap(i, j);
            bool found = false;
            for (const E& e : alg.elements)
                if (alg.equiv(e, v)) { found = true; break; }
            if (!found)
                throw std::invalid_argument("compose_metric: d_sv value " + alg.label(v) +
                                            " lies outside the postmeasure's carrier");
        }
    DistanceFamily<S, int> fam;
    fam.label = pm.name + " o " + svm.name;
    fam.eval = [mu = pm.mu, dmap = svm.dmap](const int& a, const int& b) { return DistValue<S>::of(mu(dmap(a, b))); };
    fam.same = [same = svm.same](const int& a, const int& b) { return same(a, b); };
    fam.show = [show = svm.show, n = svm.carrier_size](const int& i) {
        return show ? show(i) : "#" + std::to_string(i);
    };
    return fam;
}

/// The ball-containment claim for strictly monotone postmeasures: whenever
/// 0 < eps and r = mu(eps), the sv-ball B_eps(m) sits inside the r-ball of
/// the composed scalar metric. Checked for every eps in the pool and every
/// carrier point.
template <class E, class S>
AxiomReport check_composed_ball_containment(const Postmeasure<E, S>& pm, const SvMetric<E>& svm,
                                            const std::vector<E>& eps_pool) {
    AxiomReport rep;
    rep.subject = "ball containment (" + pm.name + " o " + svm.name + ")";
    if (!is_strictly_monotone(pm)) {
        rep.add("hypothesis", "postmeasure", "not strictly monotone; claim not applicable");
        return rep;
    }
    for (const E& eps : eps_pool) {
        if (!pm.algebra.strictly_less(pm.algebra.zero, eps)) continue;
        const S r = pm.mu(eps);
        for (int m = 0; m < svm.carrier_size; ++m) {
            ++rep.checks;
            for (int i : sv_ball(svm, m, eps))
                if (!(pm.mu(svm.dmap(m, i)) < r))
                    rep.add("ball-containment", svm.point_label(m) + " eps=" + pm.algebra.label(eps),
                            "point " + svm.point_label(i) + " escapes the composed-metric ball");
        }
    }
    return rep;
}

}  // namespace hausd
