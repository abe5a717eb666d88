#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hausd/metric_space.hpp"
#include "hausd/rational.hpp"

namespace hausd {

enum class DistKind { Value, Undefined, Infinite };

/// Result of evaluating a distance family: a value, a structured "undefined"
/// (e.g. an empty selected relation), or "infinite" (disconnected pair).
template <class S>
struct DistValue {
    DistKind kind = DistKind::Value;
    S value = S(0);
    std::string note;

    static DistValue of(S v) { return {DistKind::Value, std::move(v), {}}; }
    static DistValue undefined(std::string why) { return {DistKind::Undefined, S(0), std::move(why)}; }
    static DistValue infinite() { return {DistKind::Infinite, S(0), "disconnected"}; }
    bool ok() const { return kind == DistKind::Value; }
};

struct Violation {
    std::string axiom;    // symmetry | faithfulness | triangle | undefined | ...
    std::string witness;  // the items involved
    std::string detail;   // offending values
};

/// Outcome of an exhaustive axiom check. Empty violation list means pass.
struct AxiomReport {
    std::string subject;
    std::size_t checks = 0;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string axiom, std::string witness, std::string detail = {}) {
        violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
    }
    void merge(const AxiomReport& other) {
        checks += other.checks;
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
};

using AuditReport = AxiomReport;

/// A labelled binary distance over items of some carrier, together with the
/// item identity used by the faithfulness axiom.
template <class S, class Item>
struct DistanceFamily {
    std::string label;
    std::function<DistValue<S>(const Item&, const Item&)> eval;
    std::function<bool(const Item&, const Item&)> same;
    std::function<std::string(const Item&)> show;
};

/// Generalized distance on point sets: the common case of DistanceFamily.
template <class S>
using GeneralizedDistanceFn = DistanceFamily<S, PointSet<S>>;

template <class S>
GeneralizedDistanceFn<S> make_set_distance(std::string label,
                                           std::function<DistValue<S>(const PointSet<S>&, const PointSet<S>&)> eval) {
    return GeneralizedDistanceFn<S>{std::move(label), std::move(eval),
                                    [](const PointSet<S>& a, const PointSet<S>& b) { return a == b; },
                                    [](const PointSet<S>& a) { return a.str(); }};
}

/// Exhaustive metric-axiom audit of a distance family over a finite corpus:
/// symmetry and faithfulness on all pairs, triangle inequality on all ordered
/// triples, everything up to `tol`. Undefined evaluations are themselves
/// reported, so a partial family cannot silently pass.
template <class S, class Item>
AuditReport audit_distance(const DistanceFamily<S, Item>& fam, const std::vector<Item>& items, const S& tol) {
    AuditReport rep;
    rep.subject = fam.label;
    const int n = static_cast<int>(items.size());
    auto show = [&](int i) { return fam.show ? fam.show(items[i]) : "#" + std::to_string(i); };

    std::vector<std::vector<DistValue<S>>> d(n, std::vector<DistValue<S>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d[i][j] = fam.eval(items[i], items[j]);
            if (!d[i][j].ok())
                rep.add("undefined", "(" + show(i) + "," + show(j) + ")", d[i][j].note);
        }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!d[i][j].ok() || !d[j][i].ok()) continue;
            ++rep.checks;
            if (i < j && num::abs_val(d[i][j].value - d[j][i].value) > tol)
                rep.add("symmetry", "(" + show(i) + "," + show(j) + ")",
                        num::str(d[i][j].value) + " vs " + num::str(d[j][i].value));
            const bool identical = fam.same(items[i], items[j]);
            if (identical && d[i][j].value > tol)
                rep.add("faithfulness", "(" + show(i) + "," + show(j) + ")",
                        "identical items at distance " + num::str(d[i][j].value));
            if (!identical && !(d[i][j].value > tol))
                rep.add("faithfulness", "(" + show(i) + "," + show(j) + ")",
                        "distinct items at distance " + num::str(d[i][j].value));
        }
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (!d[i][j].ok() || !d[i][k].ok() || !d[k][j].ok()) continue;
                ++rep.checks;
                if (d[i][j].value > d[i][k].value + d[k][j].value + tol)
                    rep.add("triangle", "(" + show(i) + "," + show(j) + "," + show(k) + ")",
                            num::str(d[i][j].value) + " > " + num::str(d[i][k].value) + " + " +
                                num::str(d[k][j].value));
            }
    return rep;
}

/// Convenience audit for point-set families at the backend default tolerance.
template <class S>
AuditReport audit_distance(const GeneralizedDistanceFn<S>& fam, const std::vector<PointSet<S>>& sets) {
    return audit_distance(fam, sets, num::default_tolerance<S>());
}

}  // namespace hausd
