#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hausd/audit.hpp"
#include "hausd/rational.hpp"

namespace hausd {

/// An ordered carrier with a commutative, order-compatible join and a minimum
/// element. The order may be a genuine preorder; `equiv` is the pluggable
/// element equality that quotients it (set equality for power-set carriers,
/// sup-value equality for sup carriers, minimal-length equality for path
/// carriers). Joins are evaluated as values and need not land back in the
/// carrier list, which only drives the exhaustive quantifiers.
template <class E>
struct PartialAlgebra {
    std::string name;
    std::vector<E> elements;
    E zero;
    std::function<bool(const E&, const E&)> leq;
    std::function<E(const E&, const E&)> join;
    std::function<bool(const E&, const E&)> equiv;
    std::function<std::string(const E&)> show;

    bool strictly_less(const E& a, const E& b) const { return leq(a, b) && !equiv(a, b); }
    std::string label(const E& e) const { return show ? show(e) : std::string("<elem>"); }
};

/// Exhaustive check of the partial-algebra axioms over the carrier list:
/// preorder sanity of leq, minimality of zero, commutativity of join,
/// order-compatibility, and joint monotonicity of join over quadruples.
///
/// The joint-monotonicity conclusion is non-strict by default: with an
/// idempotent join such as set union, {x} and {y} both sit strictly below
/// {x,y} while the joins on the two sides coincide, so the strict reading
/// rules out the power-set instance itself. Pass strict_join_monotonicity
/// to check the strict form.
template <class E>
AxiomReport check_partial_algebra(const PartialAlgebra<E>& alg, bool strict_join_monotonicity = false) {
    AxiomReport rep;
    rep.subject = alg.name;
    const auto& el = alg.elements;
    const int n = static_cast<int>(el.size());

    for (int i = 0; i < n; ++i) {
        ++rep.checks;
        if (!alg.leq(el[i], el[i])) rep.add("preorder:reflexivity", alg.label(el[i]));
        if (!alg.leq(alg.zero, el[i]))
            rep.add("zero-minimum", alg.label(el[i]), "zero is not below this element");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                ++rep.checks;
                if (alg.leq(el[i], el[j]) && alg.leq(el[j], el[k]) && !alg.leq(el[i], el[k]))
                    rep.add("preorder:transitivity",
                            "(" + alg.label(el[i]) + "," + alg.label(el[j]) + "," + alg.label(el[k]) + ")");
            }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ++rep.checks;
            if (!alg.equiv(alg.join(el[i], el[j]), alg.join(el[j], el[i])))
                rep.add("join:commutativity", "(" + alg.label(el[i]) + "," + alg.label(el[j]) + ")");
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!alg.leq(el[i], el[j])) continue;
            for (int k = 0; k < n; ++k) {
                ++rep.checks;
                if (!alg.leq(alg.join(el[i], el[k]), alg.join(el[j], el[k])))
                    rep.add("join:monotone",
                            "(" + alg.label(el[i]) + "<=" + alg.label(el[j]) + ", +" + alg.label(el[k]) + ")");
            }
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!alg.strictly_less(el[i], el[j])) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (!alg.strictly_less(el[k], el[l])) continue;
                    ++rep.checks;
                    const E lhs = alg.join(el[i], el[k]);
                    const E rhs = alg.join(el[j], el[l]);
                    const bool ok = strict_join_monotonicity ? alg.strictly_less(lhs, rhs) : alg.leq(lhs, rhs);
                    if (!ok)
                        rep.add(strict_join_monotonicity ? "join:strictly-monotone" : "join:jointly-monotone",
                                "(" + alg.label(el[i]) + "<" + alg.label(el[j]) + ", " + alg.label(el[k]) + "<" +
                                    alg.label(el[l]) + ")");
                }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Power-set algebras (subsets as bitmasks over a named ground set)

using SubsetMask = std::uint64_t;

inline std::string mask_label(SubsetMask m, const std::vector<std::string>& ground) {
    if (m == 0) return "{}";
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (m & (SubsetMask(1) << i)) {
            if (!first) out += ",";
            out += ground[i];
            first = false;
        }
    return out + "}";
}

inline std::vector<SubsetMask> full_power_set(std::size_t ground_size) {
    if (ground_size > 20) throw std::invalid_argument("full_power_set: ground set too large");
    std::vector<SubsetMask> out;
    for (SubsetMask m = 0; m < (SubsetMask(1) << ground_size); ++m) out.push_back(m);
    return out;
}

/// Subsets of a ground set ordered by inclusion and joined by union, with
/// the empty set as zero. The carrier family must contain the empty set and
/// be closed under union.
inline PartialAlgebra<SubsetMask> powerset_algebra(std::vector<std::string> ground, std::vector<SubsetMask> carrier) {
    if (ground.size() > 20) throw std::invalid_argument("powerset_algebra: ground set too large");
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    bool has_empty = false;
    for (SubsetMask m : carrier) {
        if (m == 0) has_empty = true;
        if (m >> ground.size()) throw std::invalid_argument("powerset_algebra: carrier element outside ground set");
    }
    if (!has_empty) throw std::invalid_argument("powerset_algebra: carrier must contain the empty set");
    for (SubsetMask a : carrier)
        for (SubsetMask b : carrier)
            if (!std::binary_search(carrier.begin(), carrier.end(), a | b))
                throw std::invalid_argument("powerset_algebra: carrier is not union-closed (missing " +
                                            mask_label(a | b, ground) + ")");
    PartialAlgebra<SubsetMask> alg;
    alg.name = "powerset";
    alg.elements = std::move(carrier);
    alg.zero = 0;
    alg.leq = [](SubsetMask a, SubsetMask b) { return (a & ~b) == 0; };
    alg.join = [](SubsetMask a, SubsetMask b) { return a | b; };
    alg.equiv = [](SubsetMask a, SubsetMask b) { return a == b; };
    alg.show = [g = std::move(ground)](const SubsetMask& m) { return mask_label(m, g); };
    return alg;
}

// ---------------------------------------------------------------------------
// Sup algebras (finite sets of nonnegative scalars, sup order, Minkowski sum)

template <class S>
using ScalarSet = std::vector<S>;  // sorted, unique, nonempty

template <class S>
ScalarSet<S> make_scalar_set(std::vector<S> values) {
    if (values.empty()) throw std::invalid_argument("scalar set must be nonempty");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

template <class S>
ScalarSet<S> minkowski_sum(const ScalarSet<S>& a, const ScalarSet<S>& b) {
    std::vector<S> sums;
    sums.reserve(a.size() * b.size());
    for (const S& x : a)
        for (const S& y : b) sums.push_back(x + y);
    return make_scalar_set(std::move(sums));
}

template <class S>
std::string scalar_set_label(const ScalarSet<S>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += num::str(v[i]);
    }
    return out + "}";
}

/// Finite sets of nonnegative scalars ordered by sup and joined by Minkowski
/// sum; element equality is sup-class equality (the sup order is a preorder,
/// so the carrier is read up to the induced equivalence). Zero is the class
/// of {0}. Joins may leave the carrier list; the axioms hold at value level.
template <class S>
PartialAlgebra<ScalarSet<S>> sup_algebra(std::vector<ScalarSet<S>> carrier) {
    bool has_zero = false;
    for (const auto& set : carrier) {
        if (set.empty()) throw std::invalid_argument("sup_algebra: empty carrier element");
        if (set.front() < S(0)) throw std::invalid_argument("sup_algebra: negative value in carrier");
        if (set.back() == S(0)) has_zero = true;
    }
    if (!has_zero) throw std::invalid_argument("sup_algebra: carrier must contain a sup-0 element");
    PartialAlgebra<ScalarSet<S>> alg;
    alg.name = "sup-algebra";
    alg.elements = std::move(carrier);
    alg.zero = ScalarSet<S>{S(0)};
    alg.leq = [](const ScalarSet<S>& a, const ScalarSet<S>& b) { return !(a.back() > b.back()); };
    alg.join = [](const ScalarSet<S>& a, const ScalarSet<S>& b) { return minkowski_sum(a, b); };
    alg.equiv = [](const ScalarSet<S>& a, const ScalarSet<S>& b) { return a.back() == b.back(); };
    alg.show = [](const ScalarSet<S>& v) { return scalar_set_label(v); };
    return alg;
}

// ---------------------------------------------------------------------------
// Postmeasures

/// A faithful, monotone, subadditive scalar valuation on a partial algebra.
template <class E, class S>
struct Postmeasure {
    std::string name;
    PartialAlgebra<E> algebra;
    std::function<S(const E&)> mu;
};

/// Exhaustive check of faithfulness, monotonicity and subadditivity over the
/// algebra carrier.
template <class E, class S>
AxiomReport check_postmeasure(const Postmeasure<E, S>& pm, const S& tol = num::default_tolerance<S>()) {
    AxiomReport rep;
    rep.subject = pm.name;
    const auto& alg = pm.algebra;
    const auto& el = alg.elements;
    for (const E& e : el) {
        ++rep.checks;
        const S v = pm.mu(e);
        const bool is_zero_class = alg.equiv(e, alg.zero);
        if (is_zero_class && num::abs_val(v) > tol)
            rep.add("faithfulness", alg.label(e), "mu(zero-class element) = " + num::str(v));
        if (!is_zero_class && !(num::abs_val(v) > tol))
            rep.add("faithfulness", alg.label(e), "nonzero element has mu = " + num::str(v));
    }
    for (const E& a : el)
        for (const E& b : el) {
            ++rep.checks;
            if (alg.strictly_less(a, b) && pm.mu(a) > pm.mu(b) + tol)
                rep.add("monotonicity", "(" + alg.label(a) + " < " + alg.label(b) + ")",
                        num::str(pm.mu(a)) + " > " + num::str(pm.mu(b)));
            if (pm.mu(alg.join(a, b)) > pm.mu(a) + pm.mu(b) + tol)
                rep.add("subadditivity", "(" + alg.label(a) + "," + alg.label(b) + ")",
                        "mu(join) = " + num::str(pm.mu(alg.join(a, b))) + " > " + num::str(pm.mu(a)) + " + " +
                            num::str(pm.mu(b)));
        }
    return rep;
}

/// Strict monotonicity over the carrier, the extra hypothesis of the
/// topology-comparison claim.
template <class E, class S>
bool is_strictly_monotone(const Postmeasure<E, S>& pm) {
    for (const E& a : pm.algebra.elements)
        for (const E& b : pm.algebra.elements)
            if (pm.algebra.strictly_less(a, b) && !(pm.mu(a) < pm.mu(b))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Order-embedding search

/// Searches for an additive order embedding of the algebra's equivalence
/// classes into (R, <=, +): an injective assignment f with a < b implying
/// f(a) < f(b) and f(join(a,b)) = f(a) + f(b). The search is exhaustive over
/// the supplied candidate values only, so a negative result is evidence of
/// nontriviality on that grid, not a proof.
template <class E, class S>
std::optional<std::vector<S>> find_additive_embedding(const PartialAlgebra<E>& alg, const std::vector<S>& candidates) {
    // collapse the carrier to equivalence-class representatives
    std::vector<const E*> reps;
    for (const E& e : alg.elements) {
        bool fresh = true;
        for (const E* r : reps)
            if (alg.equiv(*r, e)) { fresh = false; break; }
        if (fresh) reps.push_back(&e);
    }
    const int m = static_cast<int>(reps.size());
    if (m == 0) return std::nullopt;
    const int c = static_cast<int>(candidates.size());
    if (c == 0) return std::nullopt;
    double combos = std::pow(static_cast<double>(c), m);
    if (combos > 2e7) throw std::invalid_argument("find_additive_embedding: search space too large");

    auto class_of = [&](const E& e) -> int {
        for (int i = 0; i < m; ++i)
            if (alg.equiv(*reps[i], e)) return i;
        return -1;  // join fell outside the represented classes
    };

    std::vector<int> pick(m, 0);
    while (true) {
        bool ok = true;
        for (int i = 0; ok && i < m; ++i)
            for (int j = 0; ok && j < m; ++j) {
                if (i != j && candidates[pick[i]] == candidates[pick[j]]) ok = false;  // injective
                if (!ok) break;
                if (alg.strictly_less(*reps[i], *reps[j]) && !(candidates[pick[i]] < candidates[pick[j]])) ok = false;
                if (!ok) break;
                int jc = class_of(alg.join(*reps[i], *reps[j]));
                if (jc >= 0 && !(candidates[pick[jc]] == candidates[pick[i]] + candidates[pick[j]])) ok = false;
            }
        if (ok) {
            std::vector<S> assignment;
            for (int i = 0; i < m; ++i) assignment.push_back(candidates[pick[i]]);
            return assignment;
        }
        int pos = m - 1;
        while (pos >= 0 && ++pick[pos] == c) pick[pos--] = 0;
        if (pos < 0) break;
    }
    return std::nullopt;
}

}  // namespace hausd
