#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "hausd/relational.hpp"

using namespace hausd;
using corpus::line_space;
using corpus::set_of;

namespace {

/// Deliberately broken selection: only the globally closest pair. Lower
/// relational use gives the closest-pair gap; upper relational use violates
/// the triangle inequality.
template <class S>
RelationSelection<S> selection_closest_pair() {
    return {"closest-pair", [](const PointSet<S>& A, const PointSet<S>& B) {
                require_same_space(A, B);
                int bai = 0, bbi = 0;
                for (int ai = 0; ai < A.size(); ++ai)
                    for (int bi = 0; bi < B.size(); ++bi)
                        if (A.space().d(A.members()[ai], B.members()[bi]) <
                            A.space().d(A.members()[bai], B.members()[bbi])) {
                            bai = ai;
                            bbi = bi;
                        }
                std::vector<std::vector<bool>> pairs(A.size(), std::vector<bool>(B.size(), false));
                pairs[bai][bbi] = true;
                return Relation<S>(A, B, std::move(pairs));
            }};
}

}  // namespace

TEST_CASE("completeness of relations") {
    using S = Rational;
    const auto sp = line_space<S>(4);
    const auto A = set_of(sp, {0, 1});
    const auto B = set_of(sp, {2, 3});
    CHECK(is_complete(selection_full<S>().rule(A, B)));
    Relation<S> empty(A, B, {{false, false}, {false, false}});
    CHECK_FALSE(is_complete(empty));

    const auto rh = canonical_RH(A, B);
    CHECK(rh.pairs == std::vector<std::vector<bool>>{{true, false}, {true, true}});
    CHECK(is_complete(rh));
    CHECK(is_intersection_complete(rh));
}

TEST_CASE("intersection completeness") {
    using S = Rational;
    const auto sp = line_space<S>(4);
    // empty relation between 2-element sets is an intersection of complete ones
    Relation<S> empty22(set_of(sp, {0, 1}), set_of(sp, {2, 3}), {{false, false}, {false, false}});
    CHECK(is_intersection_complete(empty22));
    CHECK(is_intersection_complete_bruteforce(empty22));

    // between singletons the only complete relation is the full pair
    Relation<S> empty11(set_of(sp, {0}), set_of(sp, {3}), {{false}});
    CHECK_FALSE(is_intersection_complete(empty11));
    CHECK_FALSE(is_intersection_complete_bruteforce(empty11));
}

TEST_CASE("pairwise criterion matches brute force on every small relation") {
    using S = Rational;
    const auto sp = line_space<S>(6);
    for (int na = 1; na <= 3; ++na)
        for (int nb = 1; nb <= 3; ++nb) {
            std::vector<int> am, bm;
            for (int i = 0; i < na; ++i) am.push_back(i);
            for (int j = 0; j < nb; ++j) bm.push_back(3 + j);
            const auto A = set_of(sp, am);
            const auto B = set_of(sp, bm);
            for (unsigned mask = 0; mask < (1u << (na * nb)); ++mask) {
                std::vector<std::vector<bool>> pairs(na, std::vector<bool>(nb, false));
                for (int c = 0; c < na * nb; ++c)
                    if (mask & (1u << c)) pairs[c / nb][c % nb] = true;
                Relation<S> R(A, B, pairs);
                CHECK(is_intersection_complete(R) == is_intersection_complete_bruteforce(R));
            }
        }
}

TEST_CASE_TEMPLATE("upper relational distances", S, Rational, double) {
    const auto sp = line_space<S>(4);
    const auto A = set_of(sp, {0, 1});
    const auto B = set_of(sp, {2, 3});
    CHECK(ur_distance(selection_rh<S>(), A, B).value == S(2));
    CHECK(ur_distance(selection_rh<S>(), A, A).value == S(0));
    CHECK(ur_distance(selection_full<S>(), A, B).value == S(3));

    const auto undef = ur_distance(selection_threshold<S>(S(0)), A, B);
    CHECK(undef.kind == DistKind::Undefined);
}

TEST_CASE("canonical R_H examples") {
    using S = Rational;
    const auto sp = line_space<S>(4);
    const auto A = set_of(sp, {0, 1});
    // A = B contains the diagonal
    const auto diag = canonical_RH(A, A);
    for (int i = 0; i < A.size(); ++i) CHECK(diag.pairs[i][i]);
    // singletons give the single pair
    const auto single = canonical_RH(set_of(sp, {0}), set_of(sp, {3}));
    CHECK(single.pairs == std::vector<std::vector<bool>>{{true}});
}

TEST_CASE("recovery: ur over the canonical relation equals hausdorff everywhere") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 3; ++trial) {
        const auto sp = corpus::random_int_metric<Rational>(5, rng);
        const auto sets = all_nonempty_subsets(sp);
        for (const auto& A : sets)
            for (const auto& B : sets) CHECK(ur_distance(selection_rh<Rational>(), A, B).value == hausdorff(A, B));
    }
}

TEST_CASE_TEMPLATE("collective upper relational distances", S, Rational, double) {
    const auto sp = line_space<S>(4);
    const auto A = set_of(sp, {0, 1});
    const auto B = set_of(sp, {2, 3});
    CHECK(cur_all_complete_enumerate(A, B) == S(2));
    CHECK(cur_distance_all_complete(A, A) == S(0));
    const std::vector<RelationSelection<S>> only_full = {selection_full<S>()};
    CHECK(cur_distance_family(only_full, A, B).value == S(3));
    CHECK_THROWS_AS(cur_distance_family(std::vector<RelationSelection<S>>{}, A, B), std::invalid_argument);
}

TEST_CASE("cur: enumeration and threshold search agree and recover hausdorff") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        const auto sp = corpus::random_int_metric<Rational>(5, rng);
        const auto sets = all_nonempty_subsets(sp);
        for (const auto& A : sets)
            for (const auto& B : sets) {
                if (A.size() * B.size() > 6) continue;  // keep enumeration tiny (2x2, 2x3)
                const Rational dh = hausdorff(A, B);
                CHECK(cur_all_complete_enumerate(A, B) == dh);
                CHECK(cur_all_complete_threshold(A, B) == dh);
            }
    }
}

TEST_CASE_TEMPLATE("lower relational distances", S, Rational, double) {
    const auto sp = line_space<S>(4);
    const auto A = set_of(sp, {0, 1});
    const auto B = set_of(sp, {2, 3});
    // complete selection recovers hausdorff
    CHECK(lr_distance(selection_full<S>(), A, B).value == hausdorff(A, B));
    CHECK(lr_distance(selection_nearest<S>(), A, B).value == hausdorff(A, B));
    // single selected pair gives the pair distance
    CHECK(lr_distance(selection_closest_pair<S>(), A, B).value == S(1));
    // restriction to dom {1}, ran {2}
    RelationSelection<S> restricted{"fixed", [](const PointSet<S>& X, const PointSet<S>& Y) {
                                        std::vector<std::vector<bool>> p(X.size(), std::vector<bool>(Y.size(), false));
                                        p[X.size() - 1][0] = true;
                                        return Relation<S>(X, Y, p);
                                    }};
    CHECK(lr_distance(restricted, A, B).value == S(1));
}

TEST_CASE("TI criterion holds for the canonical selection") {
    const auto sp = line_space<Rational>(4);
    const auto sets = all_nonempty_subsets(sp);
    const auto rep = check_ti_criterion(selection_rh<Rational>(), sets);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
}

TEST_CASE("TI criterion flags the closest-pair selection") {
    using S = Rational;
    const auto sp = line_space<S>(11);
    const std::vector<PointSet<S>> sets = {set_of(sp, {0}), set_of(sp, {10}), set_of(sp, {0, 10})};
    const auto rep = check_ti_criterion(selection_closest_pair<S>(), sets);
    CHECK_FALSE(rep.ok());
    // d({0},{10}) = 10 while both legs through {0,10} have length 0
    CHECK(rep.violations.front().axiom == "ti-criterion");
}

TEST_CASE("TI criterion is vacuous on equal sets") {
    using S = Rational;
    const auto sp = line_space<S>(4);
    const std::vector<PointSet<S>> same = {set_of(sp, {0, 1}), set_of(sp, {0, 1}), set_of(sp, {0, 1})};
    CHECK(check_ti_criterion(selection_rh<S>(), same).ok());
}

TEST_CASE("a passing TI criterion yields a triangle-clean upper relational audit") {
    std::mt19937_64 rng(29);
    const auto sp = corpus::random_int_metric<Rational>(4, rng);
    const auto sets = all_nonempty_subsets(sp);
    REQUIRE(check_ti_criterion(selection_rh<Rational>(), sets).ok());
    auto fam = make_set_distance<Rational>("ur(rh)", [](const PointSet<Rational>& A, const PointSet<Rational>& B) {
        return ur_distance(selection_rh<Rational>(), A, B);
    });
    const auto audit = audit_distance(fam, sets, Rational(0));
    for (const auto& v : audit.violations) CHECK(v.axiom != "triangle");
}

TEST_CASE("LR chain condition") {
    using S = Rational;
    const auto sp = line_space<S>(4);
    const auto sets = all_nonempty_subsets(sp);
    // complete selections: both sides equal the middle set
    CHECK(check_lr_chain_condition(selection_full<S>(), sets).ok());
    CHECK(check_lr_chain_condition(selection_nearest<S>(), sets).ok());
    // the closest-pair selection breaks the chaining identity
    const auto rep = check_lr_chain_condition(selection_closest_pair<S>(), sets);
    CHECK_FALSE(rep.ok());
    // two sets: no distinct triples, vacuous pass
    const std::vector<PointSet<S>> two = {set_of(sp, {0}), set_of(sp, {3})};
    CHECK(check_lr_chain_condition(selection_closest_pair<S>(), two).ok());
}

TEST_CASE("selection well-formedness checks") {
    using S = Rational;
    const auto sp = line_space<S>(4);
    const auto sets = all_nonempty_subsets(sp);
    CHECK(check_ur_selection_diagonal(selection_rh<S>(), sets).ok());
    CHECK_FALSE(check_ur_selection_diagonal(selection_full<S>(), sets).ok());
    CHECK(check_lr_selection_symmetric(selection_full<S>(), sets).ok());
    CHECK(check_lr_selection_symmetric(selection_rh<S>(), sets).ok());
}

TEST_CASE("directed families of TI-compatible selections give a triangle-clean cur audit") {
    using S = Rational;
    std::mt19937_64 rng(31);
    const auto sp = corpus::random_int_metric<S>(4, rng);
    const auto sets = all_nonempty_subsets(sp);
    // nearest ⊆ rh ⊆ full is a chain, hence directed downward
    const std::vector<RelationSelection<S>> family = {selection_nearest<S>(), selection_rh<S>(),
                                                      selection_full<S>()};
    CHECK(family_is_directed_down(family, sets));
    for (const auto& sel : family) {
        auto single = make_set_distance<S>("ur", [sel](const PointSet<S>& A, const PointSet<S>& B) {
            return ur_distance(sel, A, B);
        });
        for (const auto& v : audit_distance(single, sets, S(0)).violations) CHECK(v.axiom != "triangle");
    }
    auto fam = make_set_distance<S>("cur(family)", [family](const PointSet<S>& A, const PointSet<S>& B) {
        return cur_distance_family(family, A, B);
    });
    for (const auto& v : audit_distance(fam, sets, S(0)).violations) CHECK(v.axiom != "triangle");
    // and this collective distance is exactly hausdorff
    for (const auto& A : sets)
        for (const auto& B : sets) CHECK(cur_distance_family(family, A, B).value == hausdorff(A, B));
}

TEST_CASE("a non-directed family can break the collective triangle inequality") {
    using S = Rational;
    const auto sp = line_space<S>(11);
    // two selections that each satisfy the TI-criterion on this corpus but
    // whose pointwise minimum does not: pick per-pair extremes
    RelationSelection<S> biased_low{"low", [](const PointSet<S>& A, const PointSet<S>& B) {
                                        // full relation on single-point pairs, closest pair otherwise
                                        if (A.size() == 1 && B.size() == 1) return selection_full<S>().rule(A, B);
                                        return selection_closest_pair<S>().rule(A, B);
                                    }};
    const std::vector<PointSet<S>> sets = {set_of(sp, {0}), set_of(sp, {10}), set_of(sp, {0, 10})};
    const std::vector<RelationSelection<S>> family = {biased_low};
    auto fam = make_set_distance<S>("cur", [family](const PointSet<S>& A, const PointSet<S>& B) {
        return cur_distance_family(family, A, B);
    });
    bool triangle_broken = false;
    for (const auto& v : audit_distance(fam, sets, S(0)).violations) triangle_broken |= v.axiom == "triangle";
    CHECK(triangle_broken);
}
