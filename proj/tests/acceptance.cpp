// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criteria cover the four Hausdorff formulations, both set-valued
// decompositions, the composition of postmeasures with sv-metrics, the
// recovery identities of the relational and integral families, the L^p
// bound chain, kernel conditions, internal sv-metric balls, move-graph
// distances, the Gromov-Hausdorff oracle and auditor sensitivity.

#include <bit>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "hausd/algebra.hpp"
#include "hausd/audit.hpp"
#include "hausd/geo.hpp"
#include "hausd/hyperpath.hpp"
#include "hausd/integral.hpp"
#include "hausd/metric_space.hpp"
#include "hausd/relational.hpp"
#include "hausd/svmetric.hpp"

using namespace hausd;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++failures;
}

std::vector<FiniteMetricSpace<Rational>> criterion_corpus(int count, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FiniteMetricSpace<Rational>> out;
    for (int i = 0; i < count; ++i) out.push_back(corpus::random_int_metric<Rational>(points, rng));
    return out;
}

// ---------------------------------------------------------------------- 1
void criterion_1() {
    Timer timer;
    const auto spaces = criterion_corpus(20, 5, 1001);
    long pairs = 0;
    bool ok = true;
    for (const auto& sp : spaces) {
        const auto sets = all_nonempty_subsets(sp);
        for (const auto& A : sets)
            for (const auto& B : sets) {
                ++pairs;
                const Rational ref = hausdorff(A, B, HdForm::MaxSup);
                ok &= hausdorff(A, B, HdForm::InfRadius) == ref;
                ok &= hausdorff(A, B, HdForm::SupUnion) == ref;
                ok &= hausdorff(A, B, HdForm::SupAmbient) == ref;
            }
    }
    // floating backend: euclidean clouds within 1e-12
    std::mt19937_64 rng(1002);
    for (int i = 0; i < 5; ++i) {
        const auto sp = corpus::random_euclidean(5, 2, rng);
        const auto sets = all_nonempty_subsets(sp);
        for (const auto& A : sets)
            for (const auto& B : sets) {
                const double ref = hausdorff(A, B, HdForm::MaxSup);
                ok &= std::abs(hausdorff(A, B, HdForm::InfRadius) - ref) <= 1e-12;
                ok &= std::abs(hausdorff(A, B, HdForm::SupUnion) - ref) <= 1e-12;
                ok &= std::abs(hausdorff(A, B, HdForm::SupAmbient) - ref) <= 1e-12;
            }
    }
    const double secs = timer.seconds();
    ok &= secs < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "four formulations agree exactly on %ld rational pairs (plus float clouds at 1e-12) in %.2fs",
                  pairs, secs);
    report(1, ok, buf);
}

// ---------------------------------------------------------------------- 2
void criterion_2() {
    Timer timer;
    const auto spaces = criterion_corpus(20, 5, 1001);
    bool ok = true;
    std::size_t checks = 0;
    for (const auto& sp : spaces) {
        const auto sets = all_nonempty_subsets(sp);
        const auto rep = verify_decomposition(sets, Rational(0));
        ok &= rep.ok();
        checks += rep.checks;
    }
    const double secs = timer.seconds();
    ok &= secs < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "sup and threshold decompositions equal d_H, sv triangle holds (%zu checks) in %.2fs", checks,
                  secs);
    report(2, ok, buf);
}

// ---------------------------------------------------------------------- 3
void criterion_3() {
    bool ok = true;
    std::string detail;

    // sup-algebra instance over a small subset corpus
    {
        std::mt19937_64 rng(1003);
        const auto sp = corpus::random_int_metric<Rational>(4, rng);
        const auto all = all_nonempty_subsets(sp);
        std::vector<PointSet<Rational>> sets(all.begin(), all.begin() + 5);
        auto svm = decomposition_sv_metric(sets);
        ok &= svm.algebra.elements.size() <= 20;
        Postmeasure<ScalarSet<Rational>, Rational> sup{"sup", svm.algebra,
                                                       [](const ScalarSet<Rational>& v) { return v.back(); }};
        const bool checks_pass = check_partial_algebra(svm.algebra).ok() && check_postmeasure(sup, Rational(0)).ok() &&
                                 check_sv_metric(svm).ok();
        std::vector<int> items;
        for (std::size_t i = 0; i < sets.size(); ++i) items.push_back(static_cast<int>(i));
        const bool audit_clean = audit_distance(compose_metric(sup, svm), items, Rational(0)).ok();
        ok &= checks_pass && audit_clean;
        detail += "sup(" + std::to_string(svm.algebra.elements.size()) + " elems) ";
    }

    // power-set instance: cardinality over symmetric difference on |Z| = 4
    {
        std::vector<SubsetMask> family;
        for (SubsetMask m = 1; m < 16; ++m) family.push_back(m);
        auto svm = symmetric_difference_sv({"a", "b", "c", "d"}, family);
        ok &= svm.algebra.elements.size() <= 20;
        Postmeasure<SubsetMask, Rational> card{"cardinality", svm.algebra,
                                               [](const SubsetMask& m) { return Rational(std::popcount(m)); }};
        const bool checks_pass = check_partial_algebra(svm.algebra).ok() &&
                                 check_postmeasure(card, Rational(0)).ok() && check_sv_metric(svm).ok();
        std::vector<int> items;
        for (int i = 0; i < svm.carrier_size; ++i) items.push_back(i);
        const bool audit_clean = audit_distance(compose_metric(card, svm), items, Rational(0)).ok();
        ok &= checks_pass && audit_clean;
        detail += "powerset(16 elems) ";
    }

    // path-family instance: lmin over move-path families
    {
        std::mt19937_64 rng(1004);
        const auto ground = corpus::random_int_metric<Rational>(4, rng);
        const auto graph = build_hypergraph(ground, 1, MoveRule::SinglePointSwap);
        auto svm = path_sv_metric(graph);
        ok &= svm.algebra.elements.size() <= 20;
        auto pm = pathlength_postmeasure<Rational>(svm.algebra);
        const bool checks_pass = check_partial_algebra(svm.algebra).ok() &&
                                 check_postmeasure(pm, Rational(0)).ok() && check_sv_metric(svm).ok();
        std::vector<int> items;
        for (int i = 0; i < svm.carrier_size; ++i) items.push_back(i);
        const bool audit_clean = audit_distance(compose_metric(pm, svm), items, Rational(0)).ok();
        ok &= checks_pass && audit_clean;
        detail += "paths(" + std::to_string(svm.algebra.elements.size()) + " elems)";
    }

    report(3, ok, "composition lemma: passing checks imply clean mu∘d_sv audits on " + detail);
}

// ---------------------------------------------------------------------- 4
void criterion_4() {
    const auto spaces = criterion_corpus(20, 5, 1001);
    bool ok = true;
    long cross_checked = 0;
    for (const auto& sp : spaces) {
        const auto sets = all_nonempty_subsets(sp);
        const DiscreteMeasureSpace<Rational> nu(sp.labels(), std::vector<Rational>(sp.size(), Rational(1)));
        const std::vector<Rational> rho(sp.size(), Rational(1));
        for (const auto& A : sets)
            for (const auto& B : sets) {
                const Rational dh = hausdorff(A, B);
                ok &= ur_distance(selection_rh<Rational>(), A, B).value == dh;          // Remark II.a
                ok &= lr_distance(selection_nearest<Rational>(), A, B).value == dh;     // Remark II.b
                ok &= lp_set_distance(A, B, nu.weights, rho, PExp::infinite()) == dh;   // Remark III
                ok &= cur_all_complete_threshold(A, B) == dh;
                if (A.size() == 2 && B.size() <= 3) {
                    ok &= cur_all_complete_enumerate(A, B) == dh;
                    ++cross_checked;
                }
            }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "recovery identities exact (R_H, complete LR, p=inf, CUR; %ld enumerative cross-checks)",
                  cross_checked);
    report(4, ok, buf);
}

// ---------------------------------------------------------------------- 5
void criterion_5() {
    std::mt19937_64 rng(1005);
    std::uniform_int_distribution<int> npts(3, 6), nidx(1, 4);
    std::uniform_real_distribution<double> weight(0.25, 3.0);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const auto X = corpus::random_euclidean(npts(rng), 2, rng);
        const int k = nidx(rng);
        DiscreteMeasureSpace<double> Y = DiscreteMeasureSpace<double>::uniform(k);
        std::vector<double> nu_w(X.size()), rho(X.size());
        for (auto& w : nu_w) w = weight(rng);
        for (auto& w : rho) w = weight(rng);
        DiscreteMeasureSpace<double> nu(X.labels(), nu_w);
        std::uniform_int_distribution<int> pt(0, X.size() - 1);
        std::vector<int> fm(k), gm(k);
        for (int& v : fm) v = pt(rng);
        for (int& v : gm) v = pt(rng);
        IndexedSet<double> f(&X, &Y, fm), g(&X, &Y, gm);
        const double du = uniform_metric(f, g);
        for (int p : {1, 2, 4})
            ok &= lp_integral_distance(f, g, nu, rho, PExp::finite(p)) <=
                  lambda_bound(f, g, nu, rho, p) * du + 1e-12;
    }
    report(5, ok, "L^p bound chain d_p <= Lambda(p) * d_u on 200 random fixtures, p in {1,2,4}");
}

// ---------------------------------------------------------------------- 6
void criterion_6() {
    using S = Rational;
    bool ok = true;
    auto X = corpus::line_space<S>(4);
    DiscreteMeasureSpace<S> nu = DiscreteMeasureSpace<S>::uniform(4, "x");
    DiscreteMeasureSpace<S> Y = DiscreteMeasureSpace<S>::uniform(2);

    // constructed families: two parameterizations of one image plus a second
    // image; declared triples chain through the distinct image, so the ends
    // agree and the chain condition holds
    std::mt19937_64 rng(1006);
    std::uniform_int_distribution<int> pt(0, 3);
    int families_built = 0;
    for (int trial = 0; trial < 5; ++trial) {
        const int a1 = pt(rng);
        int a2 = pt(rng);
        if (a1 == a2) a2 = (a2 + 1) % 4;
        int b1 = pt(rng), b2 = pt(rng);
        if (SubsetMask((1u << a1) | (1u << a2)) == SubsetMask((1u << b1) | (1u << b2))) b1 = (a1 + 1) % 4, b2 = (a2 + 1) % 4;
        IndexedSet<S> f1(&X, &Y, {a1, a2}), f2(&X, &Y, {a2, a1}), g(&X, &Y, {b1, b2});
        std::vector<IndexedSet<S>> params = {f1, f2, g};
        KernelFamily<S> fam;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) fam.by_pair.insert({{i, j}, uniform_kernel(params[i], params[j])});
        const std::vector<std::array<int, 3>> triples = {{0, 2, 1}, {1, 2, 0}};
        if (!check_kernel_conditions(fam, params, Y, triples, S(0)).ok()) {
            ok = false;
            continue;
        }
        ++families_built;
        DistanceFamily<S, int> dist{"coupled", {}, {}, {}};
        dist.eval = [&](const int& i, const int& j) {
            if (i == j) return DistValue<S>::of(S(0));
            return DistValue<S>::of(coupled_integral_distance(params[i], params[j], nu, Y, fam.at(i, j), 1));
        };
        dist.same = [&](const int& i, const int& j) { return unorder(params[i]) == unorder(params[j]); };
        dist.show = [](const int& i) { return "f" + std::to_string(i); };
        const auto audit = audit_distance(dist, std::vector<int>{0, 1, 2}, S(0));
        for (const auto& v : audit.violations) ok &= v.axiom != "triangle";
    }
    ok &= families_built == 5;

    // a family violating (v): distinct end images force the chain to vanish
    IndexedSet<S> f(&X, &Y, {0, 1}), h(&X, &Y, {0, 2}), g(&X, &Y, {2, 3});
    std::vector<IndexedSet<S>> params = {f, h, g};
    KernelFamily<S> fam;
    fam.by_pair.insert({{0, 1}, uniform_kernel(f, h)});
    fam.by_pair.insert({{1, 2}, uniform_kernel(h, g)});
    fam.by_pair.insert({{0, 2}, uniform_kernel(f, g)});
    const auto rep = check_kernel_conditions(fam, params, Y, {{0, 1, 2}}, S(0));
    bool witnessed = false;
    for (const auto& v : rep.violations)
        witnessed |= v.axiom == "(v) chaining" && v.witness.find("x=") != std::string::npos &&
                     v.witness.find("y'=") != std::string::npos;
    ok &= witnessed;
    report(6, ok, "kernel families passing (i)-(v) audit triangle-clean; a (v) violation is localized with (x,y,y')");
}

// ---------------------------------------------------------------------- 7
void criterion_7() {
    bool ok = true;
    long balls = 0;
    for (int nz = 1; nz <= 4; ++nz) {
        std::vector<std::string> ground;
        for (int i = 0; i < nz; ++i) ground.push_back("z" + std::to_string(i));
        std::vector<SubsetMask> family;
        for (SubsetMask m = 1; m < (SubsetMask(1) << nz); ++m) family.push_back(m);
        auto d = symmetric_difference_sv(ground, family);
        for (int a = 0; a < static_cast<int>(family.size()); ++a) {
            const SubsetMask A = family[a];
            for (int x = 0; x < nz; ++x) {
                ++balls;
                const auto ball = sv_ball(d, a, SubsetMask(1) << x);
                ok &= ball.size() == 1 && family[ball[0]] == A;
            }
            for (int x = 0; x < nz; ++x)
                for (int y = x + 1; y < nz; ++y) {
                    ++balls;
                    const SubsetMask mx = SubsetMask(1) << x, my = SubsetMask(1) << y;
                    std::vector<SubsetMask> allowed{A};
                    if ((A & mx) && (A & my)) { allowed.push_back(A & ~mx); allowed.push_back(A & ~my); }
                    else if (A & mx) { allowed.push_back(A & ~mx); allowed.push_back(A | my); }
                    else if (A & my) { allowed.push_back(A & ~my); allowed.push_back(A | mx); }
                    else { allowed.push_back(A | mx); allowed.push_back(A | my); }
                    for (int i : sv_ball(d, a, mx | my))
                        ok &= std::find(allowed.begin(), allowed.end(), family[i]) != allowed.end();
                }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "internal sv-metric balls: singleton isolation and three-case containment (%ld balls)",
                  balls);
    report(7, ok, buf);
}

// ---------------------------------------------------------------------- 8
void criterion_8() {
    using S = Rational;
    bool ok = true;
    std::mt19937_64 rng(1008);
    // complete rule: dm = d_H on FS_2 over several 4-point grounds
    for (int trial = 0; trial < 3; ++trial) {
        const auto ground =
            trial == 0 ? corpus::line_space<S>(4) : corpus::random_int_metric<S>(4, rng);
        const auto g = build_hypergraph(ground, 2, MoveRule::Complete);
        for (int u = 0; u < g.vertex_count(); ++u)
            for (int v = 0; v < g.vertex_count(); ++v)
                ok &= dm_distance(g, u, v).distance.value == hausdorff(g.vertex_set(u), g.vertex_set(v));
        // swap rule dominates d_H
        const auto gs = build_hypergraph(ground, 2, MoveRule::SinglePointSwap);
        for (int u = 0; u < gs.vertex_count(); ++u)
            for (int v = 0; v < gs.vertex_count(); ++v) {
                const auto r = dm_distance(gs, u, v);
                ok &= r.distance.ok() && !(r.distance.value < hausdorff(gs.vertex_set(u), gs.vertex_set(v)));
            }
    }
    // the recorded strict-gap witness
    const auto ground = corpus::line_space<S>(4);
    const auto gs = build_hypergraph(ground, 2, MoveRule::SinglePointSwap);
    const int u = gs.vertex_index(0b1001), v = gs.vertex_index(0b0110);
    const S dm = dm_distance(gs, u, v).distance.value;
    const S dh = hausdorff(gs.vertex_set(u), gs.vertex_set(v));
    ok &= dm == S(2) && dh == S(1);
    report(8, ok, "hyperpath: complete rule equals d_H on FS_2; swap dominates with gap 1 at {0,3}/{1,2}");
}

// ---------------------------------------------------------------------- 9
void criterion_9() {
    using S = Rational;
    bool ok = true;
    const auto pair = FiniteMetricSpace<S>::metric({"a", "b"}, {{S(0), S(1)}, {S(1), S(0)}});
    const auto pt = FiniteMetricSpace<S>::metric({"o"}, {{S(0)}});
    ok &= gh_distance(pair, pt) == S(1) / S(2);

    std::vector<std::pair<FiniteMetricSpace<S>, FiniteMetricSpace<S>>> fixtures;
    fixtures.push_back({pair, pt});
    fixtures.push_back({pair, FiniteMetricSpace<S>::metric({"a", "b"}, {{S(0), S(2)}, {S(2), S(0)}})});
    fixtures.push_back({corpus::line_space<S>(3), pair});
    for (const auto& [X, Y] : fixtures) {
        const auto levels = auto_gluing_levels(X, Y, 9);
        const S resolution = levels.size() > 1 ? levels[1] - levels[0] : levels[0];
        const auto grid = gluing_grid(X, Y, levels);
        const auto result = embed_distance<S>(X, Y, grid, [](const PointSet<S>& A, const PointSet<S>& B) {
            return DistValue<S>::of(hausdorff(A, B));
        });
        const S gh = gh_distance(X, Y);
        ok &= result.distance.ok();
        ok &= !(result.distance.value < gh);
        ok &= !(result.distance.value - gh > resolution);
    }
    report(9, ok, "gh oracle gives 1/2 on the two-point/point pair; embed >= gh with gap <= auto:9 resolution");
}

// --------------------------------------------------------------------- 10
void criterion_10() {
    using S = Rational;
    bool ok = true;

    // constant postmeasure
    auto alg = powerset_algebra({"x", "y"}, full_power_set(2));
    Postmeasure<SubsetMask, S> constant{"constant", alg, [](const SubsetMask&) { return S(1); }};
    ok &= !check_postmeasure(constant, S(0)).ok();

    // asymmetric distance over subsets of the line
    const auto sp = corpus::line_space<S>(4);
    const auto sets = all_nonempty_subsets(sp);
    auto asym = make_set_distance<S>("asym", [](const PointSet<S>& A, const PointSet<S>& B) {
        return DistValue<S>::of(S(A.members().front() + 2 * B.members().front() + (A == B ? 0 : 1)));
    });
    ok &= !audit_distance(asym, sets, S(0)).ok();

    // a selection breaking the TI-criterion
    const auto line11 = corpus::line_space<S>(11);
    RelationSelection<S> closest{"closest-pair", [](const PointSet<S>& A, const PointSet<S>& B) {
                                     int bai = 0, bbi = 0;
                                     for (int ai = 0; ai < A.size(); ++ai)
                                         for (int bi = 0; bi < B.size(); ++bi)
                                             if (A.space().d(A.members()[ai], B.members()[bi]) <
                                                 A.space().d(A.members()[bai], B.members()[bbi])) {
                                                 bai = ai;
                                                 bbi = bi;
                                             }
                                     std::vector<std::vector<bool>> pairs(A.size(),
                                                                          std::vector<bool>(B.size(), false));
                                     pairs[bai][bbi] = true;
                                     return Relation<S>(A, B, pairs);
                                 }};
    const std::vector<PointSet<S>> witness_sets = {PointSet<S>(&line11, {0}), PointSet<S>(&line11, {10}),
                                                   PointSet<S>(&line11, {0, 10})};
    ok &= !check_ti_criterion(closest, witness_sets).ok();

    // broken sv-metric and broken join for good measure
    std::vector<SubsetMask> family;
    for (SubsetMask m = 1; m < 8; ++m) family.push_back(m);
    auto svd = symmetric_difference_sv({"a", "b", "c"}, family);
    auto base = svd.dmap;
    svd.dmap = [base](int i, int j) { return base(i, j) & ~SubsetMask(1); };
    ok &= !check_sv_metric(svd).ok();

    auto broken_alg = powerset_algebra({"x", "y"}, full_power_set(2));
    broken_alg.join = [](const SubsetMask& a, const SubsetMask& b) { return a & ~b; };
    ok &= !check_partial_algebra(broken_alg).ok();

    report(10, ok, "auditor sensitivity: every deliberately broken fixture yields a nonempty report");
}

}  // namespace

int main() {
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed in %.2fs\n", 10 - failures, total.seconds());
    return failures == 0 ? 0 : 1;
}
