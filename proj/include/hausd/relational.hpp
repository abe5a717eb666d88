#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hausd/audit.hpp"
#include "hausd/metric_space.hpp"

namespace hausd {

/// A relation between two point sets of one space, stored as a boolean
/// matrix over (position in A) x (position in B).
template <class S>
struct Relation {
    PointSet<S> A;
    PointSet<S> B;
    std::vector<std::vector<bool>> pairs;

    Relation(PointSet<S> a, PointSet<S> b, std::vector<std::vector<bool>> p)
        : A(std::move(a)), B(std::move(b)), pairs(std::move(p)) {
        require_same_space(A, B);
        if (pairs.size() != static_cast<std::size_t>(A.size()))
            throw std::invalid_argument("Relation: row count mismatch");
        for (const auto& row : pairs)
            if (row.size() != static_cast<std::size_t>(B.size()))
                throw std::invalid_argument("Relation: column count mismatch");
    }

    bool empty() const {
        for (const auto& row : pairs)
            for (bool v : row)
                if (v) return false;
        return true;
    }

    /// Members of A that occur in some pair, as space indices.
    std::vector<int> domain() const {
        std::vector<int> out;
        for (int ai = 0; ai < A.size(); ++ai)
            if (std::find(pairs[ai].begin(), pairs[ai].end(), true) != pairs[ai].end())
                out.push_back(A.members()[ai]);
        return out;
    }

    /// Members of B that occur in some pair, as space indices.
    std::vector<int> range() const {
        std::vector<int> out;
        for (int bi = 0; bi < B.size(); ++bi)
            for (int ai = 0; ai < A.size(); ++ai)
                if (pairs[ai][bi]) { out.push_back(B.members()[bi]); break; }
        return out;
    }

    S pair_distance(int ai, int bi) const { return A.space().d(A.members()[ai], B.members()[bi]); }
};

/// Full domain and full range.
template <class S>
bool is_complete(const Relation<S>& R) {
    return static_cast<int>(R.domain().size()) == R.A.size() &&
           static_cast<int>(R.range().size()) == R.B.size();
}

/// Whether R is an intersection of complete relations. On finite sets this
/// reduces to a pairwise avoidance criterion: each missing pair (a,b) must
/// admit a complete superset of R omitting it, which is possible exactly
/// when row a can be covered elsewhere (|B| >= 2 or a already in dom R) and
/// column b likewise (|A| >= 2 or b already in ran R).
template <class S>
bool is_intersection_complete(const Relation<S>& R) {
    const auto dom = R.domain();
    const auto ran = R.range();
    for (int ai = 0; ai < R.A.size(); ++ai)
        for (int bi = 0; bi < R.B.size(); ++bi) {
            if (R.pairs[ai][bi]) continue;
            const bool row_ok = R.B.size() >= 2 || std::binary_search(dom.begin(), dom.end(), R.A.members()[ai]);
            const bool col_ok = R.A.size() >= 2 || std::binary_search(ran.begin(), ran.end(), R.B.members()[bi]);
            if (!row_ok || !col_ok) return false;
        }
    return true;
}

/// Brute-force oracle: intersects every complete superset of R. Only for
/// tiny relations; validates the pairwise criterion above.
template <class S>
bool is_intersection_complete_bruteforce(const Relation<S>& R) {
    const int na = R.A.size(), nb = R.B.size();
    if (na * nb > 16) throw std::invalid_argument("brute-force oracle limited to 16 cells");
    std::uint32_t rmask = 0;
    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi)
            if (R.pairs[ai][bi]) rmask |= 1u << (ai * nb + bi);
    std::uint32_t meet = ~0u;
    bool any = false;
    for (std::uint32_t m = 0; m < (1u << (na * nb)); ++m) {
        if ((m & rmask) != rmask) continue;
        bool complete = true;
        for (int ai = 0; complete && ai < na; ++ai) {
            bool row = false;
            for (int bi = 0; bi < nb; ++bi) row |= (m >> (ai * nb + bi)) & 1;
            complete &= row;
        }
        for (int bi = 0; complete && bi < nb; ++bi) {
            bool col = false;
            for (int ai = 0; ai < na; ++ai) col |= (m >> (ai * nb + bi)) & 1;
            complete &= col;
        }
        if (!complete) continue;
        meet &= m;
        any = true;
    }
    return any && meet == rmask;
}

/// A rule assigning a relation to every pair of point sets.
template <class S>
struct RelationSelection {
    std::string name;
    std::function<Relation<S>(const PointSet<S>&, const PointSet<S>&)> rule;
};

/// The canonical recovery relation: all pairs within Hausdorff distance.
/// Always complete, hence intersection-complete.
template <class S>
Relation<S> canonical_RH(const PointSet<S>& A, const PointSet<S>& B) {
    require_same_space(A, B);
    const S dh = hausdorff(A, B);
    std::vector<std::vector<bool>> pairs(A.size(), std::vector<bool>(B.size(), false));
    for (int ai = 0; ai < A.size(); ++ai)
        for (int bi = 0; bi < B.size(); ++bi)
            pairs[ai][bi] = !(A.space().d(A.members()[ai], B.members()[bi]) > dh);
    return Relation<S>(A, B, std::move(pairs));
}

template <class S>
RelationSelection<S> selection_rh() {
    return {"rh", [](const PointSet<S>& A, const PointSet<S>& B) { return canonical_RH(A, B); }};
}

template <class S>
RelationSelection<S> selection_full() {
    return {"full", [](const PointSet<S>& A, const PointSet<S>& B) {
                require_same_space(A, B);
                return Relation<S>(A, B,
                                   std::vector<std::vector<bool>>(A.size(), std::vector<bool>(B.size(), true)));
            }};
}

/// Mutual nearest-point selection: each a paired with its closest b and each
/// b with its closest a (first index breaking ties). Complete by
/// construction, but generally not TI-compatible.
template <class S>
RelationSelection<S> selection_nearest() {
    return {"complete", [](const PointSet<S>& A, const PointSet<S>& B) {
                require_same_space(A, B);
                std::vector<std::vector<bool>> pairs(A.size(), std::vector<bool>(B.size(), false));
                for (int ai = 0; ai < A.size(); ++ai) {
                    int best = 0;
                    for (int bi = 1; bi < B.size(); ++bi)
                        if (A.space().d(A.members()[ai], B.members()[bi]) <
                            A.space().d(A.members()[ai], B.members()[best]))
                            best = bi;
                    pairs[ai][best] = true;
                }
                for (int bi = 0; bi < B.size(); ++bi) {
                    int best = 0;
                    for (int ai = 1; ai < A.size(); ++ai)
                        if (A.space().d(A.members()[ai], B.members()[bi]) <
                            A.space().d(A.members()[best], B.members()[bi]))
                            best = ai;
                    pairs[best][bi] = true;
                }
                return Relation<S>(A, B, std::move(pairs));
            }};
}

template <class S>
RelationSelection<S> selection_threshold(const S& r) {
    return {"threshold", [r](const PointSet<S>& A, const PointSet<S>& B) {
                require_same_space(A, B);
                std::vector<std::vector<bool>> pairs(A.size(), std::vector<bool>(B.size(), false));
                for (int ai = 0; ai < A.size(); ++ai)
                    for (int bi = 0; bi < B.size(); ++bi)
                        pairs[ai][bi] = !(A.space().d(A.members()[ai], B.members()[bi]) > r);
                return Relation<S>(A, B, std::move(pairs));
            }};
}

/// Upper relational distance: sup of d over the selected pairs. Undefined on
/// an empty selected relation.
template <class S>
DistValue<S> ur_distance(const RelationSelection<S>& sel, const PointSet<S>& A, const PointSet<S>& B) {
    const Relation<S> R = sel.rule(A, B);
    if (R.empty()) return DistValue<S>::undefined("selection produced an empty relation");
    S best(0);
    bool seen = false;
    for (int ai = 0; ai < R.A.size(); ++ai)
        for (int bi = 0; bi < R.B.size(); ++bi)
            if (R.pairs[ai][bi]) {
                const S v = R.pair_distance(ai, bi);
                best = seen ? std::max(best, v) : v;
                seen = true;
            }
    return DistValue<S>::of(best);
}

/// Collective upper relational distance over an explicit family: the least
/// upper relational value among its members.
template <class S>
DistValue<S> cur_distance_family(const std::vector<RelationSelection<S>>& family, const PointSet<S>& A,
                                 const PointSet<S>& B) {
    if (family.empty()) throw std::invalid_argument("cur_distance: empty family");
    bool seen = false;
    S best(0);
    for (const auto& sel : family) {
        const DistValue<S> v = ur_distance(sel, A, B);
        if (!v.ok()) continue;
        best = seen ? std::min(best, v.value) : v.value;
        seen = true;
    }
    if (!seen) return DistValue<S>::undefined("every member selection was empty");
    return DistValue<S>::of(best);
}

/// Exact minimum of sup d over every complete relation, by enumerating all
/// relations on at most 20 cells.
template <class S>
S cur_all_complete_enumerate(const PointSet<S>& A, const PointSet<S>& B) {
    require_same_space(A, B);
    const int na = A.size(), nb = B.size();
    if (na * nb > 20) throw std::invalid_argument("cur enumeration limited to 20 cells");
    std::vector<S> dflat(na * nb, S(0));
    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi) dflat[ai * nb + bi] = A.space().d(A.members()[ai], B.members()[bi]);
    bool seen = false;
    S best(0);
    for (std::uint32_t m = 1; m < (1u << (na * nb)); ++m) {
        bool complete = true;
        for (int ai = 0; complete && ai < na; ++ai) {
            bool row = false;
            for (int bi = 0; bi < nb; ++bi) row |= (m >> (ai * nb + bi)) & 1;
            complete &= row;
        }
        for (int bi = 0; complete && bi < nb; ++bi) {
            bool col = false;
            for (int ai = 0; ai < na; ++ai) col |= (m >> (ai * nb + bi)) & 1;
            complete &= col;
        }
        if (!complete) continue;
        S sup(0);
        bool first = true;
        for (int c = 0; c < na * nb; ++c)
            if ((m >> c) & 1) {
                sup = first ? dflat[c] : std::max(sup, dflat[c]);
                first = false;
            }
        best = seen ? std::min(best, sup) : sup;
        seen = true;
    }
    return best;
}

/// Exact minimum over complete relations via bottleneck threshold search:
/// the smallest pair distance r whose threshold relation is complete.
template <class S>
S cur_all_complete_threshold(const PointSet<S>& A, const PointSet<S>& B) {
    require_same_space(A, B);
    std::vector<S> candidates;
    for (int a : A.members())
        for (int b : B.members()) candidates.push_back(A.space().d(a, b));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    auto complete_at = [&](const S& r) {
        for (int a : A.members())
            if (dist_point_set(a, B) > r) return false;
        for (int b : B.members())
            if (dist_point_set(b, A) > r) return false;
        return true;
    };
    for (const S& r : candidates)
        if (complete_at(r)) return r;
    throw std::logic_error("cur threshold search found no complete level");  // cannot happen
}

/// Collective upper relational distance over the family of all complete
/// relations: exhaustive on small products, threshold search beyond.
template <class S>
S cur_distance_all_complete(const PointSet<S>& A, const PointSet<S>& B) {
    if (A.size() * B.size() <= 20) return cur_all_complete_enumerate(A, B);
    return cur_all_complete_threshold(A, B);
}

/// Lower relational distance: the Hausdorff distance between the selected
/// relation's domain and range. Undefined when either side is empty.
template <class S>
DistValue<S> lr_distance(const RelationSelection<S>& sel, const PointSet<S>& A, const PointSet<S>& B) {
    const Relation<S> R = sel.rule(A, B);
    const auto dom = R.domain();
    const auto ran = R.range();
    if (dom.empty() || ran.empty()) return DistValue<S>::undefined("selection has empty domain or range");
    const PointSet<S> D(A.space_ptr(), dom);
    const PointSet<S> E(A.space_ptr(), ran);
    return DistValue<S>::of(hausdorff(D, E));
}

/// TI-criterion check at eps = 0 (finite carriers attain their minima): for
/// every ordered triple of distinct corpus entries (A,B,C) and every
/// selected pair (a,b), some pair of selected pairs through C must dominate
/// d(a,b). Violating pairs are reported with their triple.
template <class S>
AxiomReport check_ti_criterion(const RelationSelection<S>& sel, const std::vector<PointSet<S>>& sets) {
    AxiomReport rep;
    rep.subject = "TI-criterion for " + sel.name;
    const int n = static_cast<int>(sets.size());
    for (int ia = 0; ia < n; ++ia)
        for (int ib = 0; ib < n; ++ib)
            for (int ic = 0; ic < n; ++ic) {
                if (ia == ib || ib == ic || ia == ic) continue;
                const auto& A = sets[ia];
                const auto& B = sets[ib];
                const auto& C = sets[ic];
                const Relation<S> rab = sel.rule(A, B);
                if (rab.empty()) continue;
                const DistValue<S> ac = ur_distance(sel, A, C);
                const DistValue<S> cb = ur_distance(sel, C, B);
                for (int ai = 0; ai < rab.A.size(); ++ai)
                    for (int bi = 0; bi < rab.B.size(); ++bi) {
                        if (!rab.pairs[ai][bi]) continue;
                        ++rep.checks;
                        const S dab = rab.pair_distance(ai, bi);
                        const bool dominated = ac.ok() && cb.ok() && !(dab > ac.value + cb.value);
                        if (!dominated)
                            rep.add("ti-criterion",
                                    "(" + A.str() + "," + B.str() + "," + C.str() + ")",
                                    "pair (" + A.space().label(rab.A.members()[ai]) + "," +
                                        B.space().label(rab.B.members()[bi]) + ") at distance " + num::str(dab) +
                                        (ac.ok() && cb.ok()
                                             ? " exceeds " + num::str(ac.value) + " + " + num::str(cb.value)
                                             : " has no selected pairs through the middle set"));
                    }
            }
    return rep;
}

/// The chaining identity sufficient for the lower relational triangle
/// inequality: ran S(A,B) = dom S(B,C) over ordered triples of distinct
/// corpus entries.
template <class S>
AxiomReport check_lr_chain_condition(const RelationSelection<S>& sel, const std::vector<PointSet<S>>& sets) {
    AxiomReport rep;
    rep.subject = "LR chain condition for " + sel.name;
    const int n = static_cast<int>(sets.size());
    for (int ia = 0; ia < n; ++ia)
        for (int ib = 0; ib < n; ++ib)
            for (int ic = 0; ic < n; ++ic) {
                if (ia == ib || ib == ic || ia == ic) continue;
                ++rep.checks;
                const auto ran_ab = sel.rule(sets[ia], sets[ib]).range();
                const auto dom_bc = sel.rule(sets[ib], sets[ic]).domain();
                if (ran_ab != dom_bc)
                    rep.add("lr-chain", "(" + sets[ia].str() + "," + sets[ib].str() + "," + sets[ic].str() + ")",
                            "ran S(A,B) != dom S(B,C)");
            }
    return rep;
}

/// Selection well-formedness for upper relational use: R(A,A) must be the
/// diagonal.
template <class S>
AxiomReport check_ur_selection_diagonal(const RelationSelection<S>& sel, const std::vector<PointSet<S>>& sets) {
    AxiomReport rep;
    rep.subject = "UR diagonal rule for " + sel.name;
    for (const auto& A : sets) {
        ++rep.checks;
        const Relation<S> R = sel.rule(A, A);
        for (int i = 0; i < A.size(); ++i)
            for (int j = 0; j < A.size(); ++j)
                if (R.pairs[i][j] != (i == j)) {
                    rep.add("diagonal", A.str(), "R(A,A) is not the diagonal");
                    goto next_set;
                }
    next_set:;
    }
    return rep;
}

/// Selection well-formedness for lower relational use: S(A,A) symmetric.
template <class S>
AxiomReport check_lr_selection_symmetric(const RelationSelection<S>& sel, const std::vector<PointSet<S>>& sets) {
    AxiomReport rep;
    rep.subject = "LR symmetry rule for " + sel.name;
    for (const auto& A : sets) {
        ++rep.checks;
        const Relation<S> R = sel.rule(A, A);
        for (int i = 0; i < A.size(); ++i)
            for (int j = 0; j < A.size(); ++j)
                if (R.pairs[i][j] != R.pairs[j][i]) {
                    rep.add("symmetric-diagonal", A.str(), "S(A,A) is not symmetric");
                    goto next_set;
                }
    next_set:;
    }
    return rep;
}

/// Downward-directedness of a selection family over a corpus: for every two
/// members there is a member below their pairwise intersection on every pair
/// of sets. This is the hypothesis under which the collective distance
/// inherits the triangle inequality.
template <class S>
bool family_is_directed_down(const std::vector<RelationSelection<S>>& family, const std::vector<PointSet<S>>& sets) {
    const int nf = static_cast<int>(family.size());
    auto below = [&](int k, int i, int j) {
        for (const auto& A : sets)
            for (const auto& B : sets) {
                const auto rk = family[k].rule(A, B);
                const auto ri = family[i].rule(A, B);
                const auto rj = family[j].rule(A, B);
                for (int ai = 0; ai < rk.A.size(); ++ai)
                    for (int bi = 0; bi < rk.B.size(); ++bi)
                        if (rk.pairs[ai][bi] && !(ri.pairs[ai][bi] && rj.pairs[ai][bi])) return false;
            }
        return true;
    };
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) {
            bool found = false;
            for (int k = 0; k < nf && !found; ++k) found = below(k, i, j);
            if (!found) return false;
        }
    return true;
}

}  // namespace hausd
