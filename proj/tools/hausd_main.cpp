// hausd: distances on finite metric configurations, their decompositions,
// and exhaustive axiom audits. Emits JSON reports; exit code 0 = success,
// 2 = axiom violations found, 3 = invalid input.

#include <chrono>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hausd/algebra.hpp"
#include "hausd/audit.hpp"
#include "hausd/geo.hpp"
#include "hausd/hyperpath.hpp"
#include "hausd/integral.hpp"
#include "hausd/io.hpp"
#include "hausd/metric_space.hpp"
#include "hausd/relational.hpp"
#include "hausd/svmetric.hpp"

using namespace hausd;

namespace {

constexpr const char* kSchema = "hausd-report/1";
constexpr int kExitViolations = 2;
constexpr int kExitInvalid = 3;

struct GlobalOpts {
    std::string out;
    std::string tolerance;  // parsed per backend
    std::string backend = "auto";
    std::uint64_t seed = 0;
    bool timing = false;
};

struct DistOpts {
    std::string family = "hausdorff";
    std::string space_file;
    std::string a;
    std::string b;
    std::string metric;  // point-cloud metric flag
    std::string form = "maxsup";
    std::string sel = "rh";
    std::string p = "1";
    std::string fixture;
    std::string F = "id";
    std::string G = "abs(r-s)";
    std::string alpha = "1";
    std::string beta = "0";
    std::string coord_metric = "manhattan";
    std::string sweep_p;  // comma list of exponents -> CSV/JSON series
};

struct AuditOpts {
    std::string family = "hausdorff";
    std::string space_file;
    std::string metric;
    std::string sel = "rh";
    std::string p = "1";
    std::string fixture;
    std::string F = "id";
    std::string G = "abs(r-s)";
    int max_points = 6;
    bool semimetric = false;
};

struct TopologyOpts {
    std::string ground;    // comma list of ground names
    std::string carrier = "all";
    std::string eps_pool;  // semicolon-separated subsets
    int guard = 12;
};

struct HyperpathOpts {
    std::string ground_file;
    std::string metric;
    int m = 2;
    std::string rule = "swap";
    std::string from;
    std::string to;
    std::string sweep_m;  // comma list of m values -> CSV/JSON series
};

struct GeoOpts {
    std::string x_file;
    std::string y_file;
    std::string metric;
    std::string grid = "auto:5";
    std::string base = "hausdorff";
};

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

void emit(const GlobalOpts& g, json& report, const Clock& clock) {
    if (g.timing) report["timing_ms"] = clock.ms();
    const std::string text = report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write to '" + g.out + "'");
        out << text;
    }
}

void emit_series(const GlobalOpts& g, json& report, const std::string& x_name,
                 const std::vector<std::pair<std::string, std::string>>& rows, const Clock& clock) {
    if (!g.out.empty() && g.out.size() > 4 && g.out.substr(g.out.size() - 4) == ".csv") {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write to '" + g.out + "'");
        out << x_name << ",value\n";
        for (const auto& [x, v] : rows) out << x << "," << v << "\n";
        return;
    }
    json series = json::array();
    for (const auto& [x, v] : rows) series.push_back({{x_name, x}, {"value", v}});
    report["results"] = {{"series", series}};
    emit(g, report, clock);
}

json input_echo(const std::string& path) {
    json j;
    j["path"] = path;
    j["digest"] = content_digest(read_file(path));
    return j;
}

template <class S>
S tolerance_of(const GlobalOpts& g) {
    if (g.tolerance.empty()) return num::default_tolerance<S>();
    return parse_scalar<S>(g.tolerance);
}

/// Backend choice: rational unless euclidean coordinates force doubles.
bool use_rational(const GlobalOpts& g, const std::string& metric_flag) {
    if (g.backend == "rational") return true;
    if (g.backend == "double") return false;
    if (g.backend != "auto") throw std::invalid_argument("unknown backend '" + g.backend + "'");
    return metric_flag != "euclidean";
}

HdForm parse_form(const std::string& name) {
    if (name == "maxsup") return HdForm::MaxSup;
    if (name == "infr") return HdForm::InfRadius;
    if (name == "supunion") return HdForm::SupUnion;
    if (name == "supambient") return HdForm::SupAmbient;
    throw std::invalid_argument("unknown hausdorff formulation '" + name + "'");
}

MoveRule parse_rule(const std::string& name) {
    if (name == "complete") return MoveRule::Complete;
    if (name == "swap") return MoveRule::SinglePointSwap;
    if (name == "step") return MoveRule::SinglePointStep;
    throw std::invalid_argument("unknown move rule '" + name + "'");
}

template <class S>
RelationSelection<S> parse_selection(const std::string& text) {
    if (text == "rh") return selection_rh<S>();
    if (text == "complete") return selection_nearest<S>();
    if (text == "full") return selection_full<S>();
    if (text.rfind("threshold:", 0) == 0) return selection_threshold<S>(parse_scalar<S>(text.substr(10)));
    if (text.rfind("custom:", 0) == 0) {
        const json j = json::parse(read_file(text.substr(7)));
        std::vector<std::vector<bool>> table;
        for (const auto& row : j.at("pairs")) {
            std::vector<bool> r;
            for (const auto& cell : row) r.push_back(cell.get<int>() != 0);
            table.push_back(std::move(r));
        }
        return {"custom", [table](const PointSet<S>& A, const PointSet<S>& B) {
                    if (table.size() != static_cast<std::size_t>(A.size()) ||
                        table.front().size() != static_cast<std::size_t>(B.size()))
                        throw std::invalid_argument("custom relation table does not fit the given sets");
                    return Relation<S>(A, B, table);
                }};
    }
    throw std::invalid_argument("unknown selection '" + text + "'");
}

/// The two point sets of a dist invocation: either --space plus index
/// lists, or two point-cloud files whose union is the ambient space.
template <class S>
struct SetPair {
    FiniteMetricSpace<S> space;
    std::vector<int> a, b;
    json inputs;
};

template <class S>
SetPair<S> load_set_pair(const DistOpts& d) {
    json inputs;
    if (!d.space_file.empty()) {
        if (d.a.empty() || d.b.empty()) throw std::invalid_argument("--space needs --a and --b member lists");
        auto sp = load_space<S>(d.space_file, d.metric);
        inputs["space"] = input_echo(d.space_file);
        auto a = parse_member_list(sp, d.a);
        auto b = parse_member_list(sp, d.b);
        return {std::move(sp), std::move(a), std::move(b), std::move(inputs)};
    }
    // two clouds over a shared coordinate system
    if (d.a.empty() || d.b.empty()) throw std::invalid_argument("dist needs --space or two cloud files in --a/--b");
    const std::string metric = d.metric.empty() ? "euclidean" : d.metric;
    const auto rows_a = tokenize_csv(read_file(d.a));
    const auto rows_b = tokenize_csv(read_file(d.b));
    std::vector<std::vector<S>> coords;
    auto add = [&](const std::vector<std::vector<std::string>>& rows) {
        std::vector<int> idx;
        for (const auto& row : rows) {
            std::vector<S> c;
            for (const auto& cell : row) c.push_back(parse_scalar<S>(cell));
            auto it = std::find(coords.begin(), coords.end(), c);
            if (it == coords.end()) {
                coords.push_back(std::move(c));
                idx.push_back(static_cast<int>(coords.size()) - 1);
            } else {
                idx.push_back(static_cast<int>(it - coords.begin()));
            }
        }
        return idx;
    };
    auto ia = add(rows_a);
    auto ib = add(rows_b);
    inputs["a"] = input_echo(d.a);
    inputs["b"] = input_echo(d.b);
    auto sp = FiniteMetricSpace<S>::from_points(std::move(coords), point_metric_from_name(metric));
    return {std::move(sp), std::move(ia), std::move(ib), std::move(inputs)};
}

template <class S>
GeneralizedDistanceFn<S> family_distance(const std::string& family, const DistOpts& d) {
    if (family == "hausdorff") {
        const HdForm form = parse_form(d.form);
        return make_set_distance<S>("hausdorff", [form](const PointSet<S>& A, const PointSet<S>& B) {
            return DistValue<S>::of(hausdorff(A, B, form));
        });
    }
    if (family == "ur") {
        auto sel = parse_selection<S>(d.sel);
        return make_set_distance<S>("ur(" + sel.name + ")",
                                    [sel](const PointSet<S>& A, const PointSet<S>& B) { return ur_distance(sel, A, B); });
    }
    if (family == "lr") {
        auto sel = parse_selection<S>(d.sel);
        return make_set_distance<S>("lr(" + sel.name + ")",
                                    [sel](const PointSet<S>& A, const PointSet<S>& B) { return lr_distance(sel, A, B); });
    }
    if (family == "cur") {
        if (d.sel == "all_complete")
            return make_set_distance<S>("cur(all_complete)", [](const PointSet<S>& A, const PointSet<S>& B) {
                return DistValue<S>::of(cur_distance_all_complete(A, B));
            });
        std::vector<RelationSelection<S>> family_sels;
        std::istringstream ss(d.sel);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) family_sels.push_back(parse_selection<S>(tok));
        return make_set_distance<S>("cur(" + d.sel + ")", [family_sels](const PointSet<S>& A, const PointSet<S>& B) {
            return cur_distance_family(family_sels, A, B);
        });
    }
    if (family == "lp") {
        const PExp p = PExp::parse(d.p);
        return make_set_distance<S>("lp(p=" + d.p + ")", [p](const PointSet<S>& A, const PointSet<S>& B) {
            const int n = A.space().size();
            return DistValue<S>::of(lp_set_distance(A, B, std::vector<S>(n, S(1)), std::vector<S>(n, S(1)), p));
        });
    }
    throw std::invalid_argument("family '" + family + "' is not a point-set family");
}

template <class S>
int run_dist(const GlobalOpts& g, const DistOpts& d) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = "dist";
    report["backend"] = num::is_exact_backend<S>() ? "rational" : "double";
    report["params"] = {{"family", d.family}};
    report["seed"] = g.seed;

    if (d.family == "coupled" || d.family == "weighted" || d.family == "extended") {
        if (d.fixture.empty()) throw std::invalid_argument("family '" + d.family + "' needs --fixture");
        const auto fix = integral_fixture_from_json<S>(json::parse(read_file(d.fixture)));
        report["inputs"] = {{"fixture", input_echo(d.fixture)}};
        const auto f = fix.param("f");
        const auto gparam = fix.param("g");
        const PExp pe = PExp::parse(d.p);
        if (pe.inf) throw std::invalid_argument("kernel distances need finite p");
        const auto& kernel = fix.kernels.at(fix.param_id("f"), fix.param_id("g"));
        DistValue<S> value = DistValue<S>::of(S(0));
        if (d.family == "coupled") {
            value = DistValue<S>::of(coupled_integral_distance(f, gparam, fix.nu, fix.Y, kernel, pe.p));
        } else if (d.family == "weighted") {
            const S alpha = parse_scalar<S>(d.alpha);
            const S beta = parse_scalar<S>(d.beta);
            value = DistValue<S>::of(weighted_integral_distance(
                f, gparam, fix.nu, fix.Y, kernel, [alpha](int, int, int) { return alpha; },
                [beta](int, int, int) { return beta; }, pe.p, point_metric_from_name(d.coord_metric)));
        } else {
            const auto F = Expr<S>::parse(d.F, {"t"});
            const auto G = Expr<S>::parse(d.G, {"r", "s", "t"});
            value = DistValue<S>::of(extended_distance(f, gparam, fix.nu, fix.Y, kernel, F, G));
        }
        report["params"]["p"] = d.p;
        report["results"] = dist_value_to_json(value);
        emit(g, report, clock);
        return 0;
    }

    auto pair = load_set_pair<S>(d);
    report["inputs"] = pair.inputs;
    const PointSet<S> A(&pair.space, pair.a);
    const PointSet<S> B(&pair.space, pair.b);
    if (d.family == "lp" && !d.sweep_p.empty()) {
        std::vector<std::pair<std::string, std::string>> rows;
        std::istringstream ss(d.sweep_p);
        std::string tok;
        const int n = A.space().size();
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const S v = lp_set_distance(A, B, std::vector<S>(n, S(1)), std::vector<S>(n, S(1)), PExp::parse(tok));
            rows.push_back({tok, std::to_string(num::to_double(v))});
        }
        report["params"]["sweep_p"] = d.sweep_p;
        emit_series(g, report, "p", rows, clock);
        return 0;
    }
    const auto fam = family_distance<S>(d.family, d);
    report["params"]["label"] = fam.label;
    report["results"] = dist_value_to_json(fam.eval(A, B));
    emit(g, report, clock);
    return 0;
}

template <class S>
int run_audit(const GlobalOpts& g, const AuditOpts& a) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = "audit";
    report["backend"] = num::is_exact_backend<S>() ? "rational" : "double";
    report["params"] = {{"family", a.family}, {"tolerance", g.tolerance.empty() ? "default" : g.tolerance}};
    report["seed"] = g.seed;
    const S tol = tolerance_of<S>(g);

    std::vector<AxiomReport> reports;
    if (a.family == "algebra") {
        if (a.fixture.empty()) throw std::invalid_argument("audit --family algebra needs --fixture");
        const auto fix = algebra_from_json<S>(json::parse(read_file(a.fixture)));
        report["inputs"] = {{"fixture", input_echo(a.fixture)}};
        reports.push_back(check_partial_algebra(fix.algebra));
        if (fix.has_mu) {
            Postmeasure<int, S> pm{"fixture mu", fix.algebra, fix.mu};
            reports.push_back(check_postmeasure(pm, tol));
        }
    } else if (a.family == "coupled" || a.family == "weighted" || a.family == "extended") {
        if (a.fixture.empty()) throw std::invalid_argument("audit --family " + a.family + " needs --fixture");
        const auto fix = integral_fixture_from_json<S>(json::parse(read_file(a.fixture)));
        report["inputs"] = {{"fixture", input_echo(a.fixture)}};
        const auto params = fix.all_params();
        const PExp pe = PExp::parse(a.p);
        if (pe.inf) throw std::invalid_argument("kernel distances need finite p");
        reports.push_back(check_kernel_conditions(fix.kernels, params, fix.Y, fix.triples, tol));
        const auto F = Expr<S>::parse(a.F, {"t"});
        const auto G = Expr<S>::parse(a.G, {"r", "s", "t"});
        DistanceFamily<S, int> fam{a.family, {}, {}, {}};
        fam.eval = [&, F, G](const int& i, const int& j) {
            if (i == j) return DistValue<S>::of(S(0));
            if (!fix.kernels.has(i, j)) return DistValue<S>::undefined("missing kernel");
            const auto& kernel = fix.kernels.at(i, j);
            if (a.family == "weighted")
                return DistValue<S>::of(weighted_integral_distance(
                    params[i], params[j], fix.nu, fix.Y, kernel, [](int, int, int) { return S(1); },
                    [](int, int, int) { return S(0); }, pe.p, PointMetric::Manhattan));
            if (a.family == "extended")
                return DistValue<S>::of(extended_distance(params[i], params[j], fix.nu, fix.Y, kernel, F, G));
            return DistValue<S>::of(
                coupled_integral_distance(params[i], params[j], fix.nu, fix.Y, kernel, pe.p));
        };
        fam.same = [&](const int& i, const int& j) { return unorder(params[i]) == unorder(params[j]); };
        fam.show = [&](const int& i) { return fix.param_names[i]; };
        std::vector<int> items;
        for (std::size_t i = 0; i < params.size(); ++i) items.push_back(static_cast<int>(i));
        reports.push_back(audit_distance(fam, items, tol));
    } else {
        if (a.space_file.empty()) throw std::invalid_argument("audit needs --space");
        auto sp = load_space<S>(a.space_file, a.metric, /*require_triangle=*/!a.semimetric);
        report["inputs"] = {{"space", input_echo(a.space_file)}};
        if (sp.size() > a.max_points)
            throw std::invalid_argument("space has " + std::to_string(sp.size()) +
                                        " points; exhaustive subset audit is guarded at " +
                                        std::to_string(a.max_points));
        const auto sets = all_nonempty_subsets(sp);
        DistOpts d;
        d.family = a.family;
        d.sel = a.sel;
        d.p = a.p;
        reports.push_back(audit_distance(family_distance<S>(a.family, d), sets, tol));
        if (a.family == "ur") reports.push_back(check_ti_criterion(parse_selection<S>(a.sel), sets));
        if (a.family == "lr") reports.push_back(check_lr_chain_condition(parse_selection<S>(a.sel), sets));
    }

    json results = json::array();
    bool ok = true;
    for (const auto& rep : reports) {
        results.push_back(violations_to_json(rep));
        ok &= rep.ok();
    }
    report["results"] = results;
    emit(g, report, clock);
    return ok ? 0 : kExitViolations;
}

template <class S>
int run_decompose(const GlobalOpts& g, const AuditOpts& a) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = "decompose";
    report["backend"] = num::is_exact_backend<S>() ? "rational" : "double";
    report["params"] = json::object();
    report["seed"] = g.seed;
    const S tol = tolerance_of<S>(g);

    if (a.space_file.empty()) throw std::invalid_argument("decompose needs --space");
    auto sp = load_space<S>(a.space_file, a.metric);
    report["inputs"] = {{"space", input_echo(a.space_file)}};
    if (sp.size() > a.max_points)
        throw std::invalid_argument("space too large for the exhaustive decomposition check");
    const auto sets = all_nonempty_subsets(sp);

    std::vector<AxiomReport> reports;
    reports.push_back(verify_decomposition(sets, tol));
    auto svm = decomposition_sv_metric(sets);
    reports.push_back(check_partial_algebra(svm.algebra));
    Postmeasure<ScalarSet<S>, S> sup{"sup", svm.algebra, [](const ScalarSet<S>& v) { return v.back(); }};
    reports.push_back(check_postmeasure(sup, tol));
    reports.push_back(check_sv_metric(svm));
    auto composed = compose_metric(sup, svm);
    std::vector<int> items;
    for (std::size_t i = 0; i < sets.size(); ++i) items.push_back(static_cast<int>(i));
    reports.push_back(audit_distance(composed, items, tol));

    json results = json::array();
    bool ok = true;
    for (const auto& rep : reports) {
        results.push_back(violations_to_json(rep));
        ok &= rep.ok();
    }
    report["results"] = results;
    emit(g, report, clock);
    return ok ? 0 : kExitViolations;
}

std::vector<SubsetMask> parse_mask_list(const std::vector<std::string>& ground, const std::string& text) {
    auto find = [&](const std::string& name) {
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (ground[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("unknown ground element '" + name + "'");
    };
    std::vector<SubsetMask> out;
    std::istringstream sets(text);
    std::string set_tok;
    while (std::getline(sets, set_tok, ';')) {
        SubsetMask m = 0;
        std::istringstream elems(set_tok);
        std::string e;
        while (std::getline(elems, e, ',')) {
            e.erase(0, e.find_first_not_of(" \t"));
            e.erase(e.find_last_not_of(" \t") + 1);
            if (!e.empty()) m |= SubsetMask(1) << find(e);
        }
        out.push_back(m);
    }
    return out;
}

int run_topology(const GlobalOpts& g, const TopologyOpts& t) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = "topology";
    report["backend"] = "exact";
    report["seed"] = g.seed;

    std::vector<std::string> ground;
    std::istringstream gs(t.ground);
    std::string tok;
    while (std::getline(gs, tok, ','))
        if (!tok.empty()) ground.push_back(tok);
    if (ground.empty()) throw std::invalid_argument("topology needs --ground names");

    std::vector<SubsetMask> carrier;
    if (t.carrier == "all") {
        for (SubsetMask m = 1; m < (SubsetMask(1) << ground.size()); ++m) carrier.push_back(m);
    } else if (t.carrier == "proper") {
        for (SubsetMask m = 1; m + 1 < (SubsetMask(1) << ground.size()); ++m) carrier.push_back(m);
    } else {
        carrier = parse_mask_list(ground, t.carrier);
    }
    if (t.eps_pool.empty()) throw std::invalid_argument("topology needs --eps-pool");
    const auto pool = parse_mask_list(ground, t.eps_pool);

    auto d = symmetric_difference_sv(ground, carrier);
    const auto topo = sv_topology(d, pool, t.guard);

    report["params"] = {{"ground", t.ground}, {"carrier_size", topo.carrier_size}, {"eps_pool", t.eps_pool}};
    json opens = json::array();
    for (SubsetMask open : topo.opens) {
        json one = json::array();
        for (int i = 0; i < topo.carrier_size; ++i)
            if (open & (SubsetMask(1) << i)) one.push_back(d.point_label(i));
        opens.push_back(one);
    }
    report["results"] = {{"open_sets", opens},
                         {"count", topo.opens.size()},
                         {"discrete", topo.is_discrete()},
                         {"verified", topo.verify()}};
    emit(g, report, clock);
    return 0;
}

template <class S>
int run_hyperpath(const GlobalOpts& g, const HyperpathOpts& h) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = "hyperpath";
    report["backend"] = num::is_exact_backend<S>() ? "rational" : "double";
    report["seed"] = g.seed;

    auto ground = load_space<S>(h.ground_file, h.metric);
    report["inputs"] = {{"ground", input_echo(h.ground_file)}};
    report["params"] = {{"m", h.m}, {"rule", h.rule}, {"from", h.from}, {"to", h.to}};
    const auto graph = build_hypergraph(ground, h.m, parse_rule(h.rule));

    auto member_mask = [&](const std::string& list) {
        SubsetMask m = 0;
        for (int idx : parse_member_list(ground, list)) m |= SubsetMask(1) << idx;
        return m;
    };
    if (!h.sweep_m.empty()) {
        std::vector<std::pair<std::string, std::string>> rows;
        std::istringstream ss(h.sweep_m);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const int m = std::stoi(tok);
            const auto gm = build_hypergraph(ground, m, parse_rule(h.rule));
            const int fu = gm.vertex_index(member_mask(h.from));
            const int fv = gm.vertex_index(member_mask(h.to));
            if (fu < 0 || fv < 0) throw std::invalid_argument("endpoints exceed m = " + tok);
            const auto rm = dm_distance(gm, fu, fv);
            rows.push_back({tok, rm.distance.ok() ? std::to_string(num::to_double(rm.distance.value)) : "inf"});
        }
        report["params"]["sweep_m"] = h.sweep_m;
        emit_series(g, report, "m", rows, clock);
        return 0;
    }

    const int from = graph.vertex_index(member_mask(h.from));
    const int to = graph.vertex_index(member_mask(h.to));
    if (from < 0 || to < 0) throw std::invalid_argument("endpoint is not a vertex of FS_m");

    const auto r = dm_distance(graph, from, to);
    json results = dist_value_to_json(r.distance);
    json path = json::array();
    for (int v : r.path) path.push_back(graph.vertex_label(v));
    results["path"] = path;
    results["dH_of_endpoints"] = num::to_double(hausdorff(graph.vertex_set(from), graph.vertex_set(to)));
    report["results"] = results;
    emit(g, report, clock);
    return 0;
}

template <class S>
int run_geo(const GlobalOpts& g, const GeoOpts& o, bool embed) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = embed ? "geo embed" : "geo gh";
    report["backend"] = num::is_exact_backend<S>() ? "rational" : "double";
    report["seed"] = g.seed;

    auto X = load_space<S>(o.x_file, o.metric);
    auto Y = load_space<S>(o.y_file, o.metric);
    report["inputs"] = {{"x", input_echo(o.x_file)}, {"y", input_echo(o.y_file)}};

    if (!embed) {
        const S v = gh_distance(X, Y);
        report["results"] = dist_value_to_json(DistValue<S>::of(v));
        emit(g, report, clock);
        return 0;
    }

    std::vector<std::vector<std::vector<S>>> candidates;
    S resolution(0);
    if (o.grid.rfind("auto:", 0) == 0) {
        const int levels_n = std::stoi(o.grid.substr(5));
        const auto levels = auto_gluing_levels(X, Y, levels_n);
        if (levels.size() > 1) resolution = levels[1] - levels[0];
        candidates = gluing_grid(X, Y, levels);
    } else {
        const json j = json::parse(read_file(o.grid));
        for (const auto& mat : j) {
            std::vector<std::vector<S>> cross;
            for (const auto& row : mat) {
                std::vector<S> r;
                for (const auto& cell : row) r.push_back(scalar_from_json<S>(cell));
                cross.push_back(std::move(r));
            }
            candidates.push_back(std::move(cross));
        }
    }

    EmbedBase<S> base;
    if (o.base == "hausdorff") {
        base = [](const PointSet<S>& A, const PointSet<S>& B) { return DistValue<S>::of(hausdorff(A, B)); };
    } else if (o.base == "cur:all_complete") {
        base = [](const PointSet<S>& A, const PointSet<S>& B) {
            return DistValue<S>::of(cur_distance_all_complete(A, B));
        };
    } else if (o.base.rfind("cur:", 0) == 0) {
        std::vector<RelationSelection<S>> sels;
        std::istringstream ss(o.base.substr(4));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) sels.push_back(parse_selection<S>(tok));
        base = [sels](const PointSet<S>& A, const PointSet<S>& B) { return cur_distance_family(sels, A, B); };
    } else if (o.base.rfind("ur:", 0) == 0) {
        auto sel = parse_selection<S>(o.base.substr(3));
        base = [sel](const PointSet<S>& A, const PointSet<S>& B) { return ur_distance(sel, A, B); };
    } else {
        throw std::invalid_argument("unknown embed base '" + o.base + "'");
    }

    const auto result = embed_distance(X, Y, candidates, base);
    report["params"] = {{"grid", o.grid},
                        {"base", o.base},
                        {"candidates", candidates.size()},
                        {"valid_candidates", result.valid_candidates}};
    json results = dist_value_to_json(result.distance);
    results["gh_lower_bound"] = num::to_double(gh_distance(X, Y));
    if (o.grid.rfind("auto:", 0) == 0) results["grid_resolution"] = num::to_double(resolution);
    report["results"] = results;
    emit(g, report, clock);
    return 0;
}

template <class S>
int run_kernels_check(const GlobalOpts& g, const AuditOpts& a) {
    Clock clock;
    json report;
    report["schema"] = kSchema;
    report["command"] = "kernels-check";
    report["backend"] = num::is_exact_backend<S>() ? "rational" : "double";
    report["seed"] = g.seed;
    if (a.fixture.empty()) throw std::invalid_argument("kernels-check needs --fixture");
    const auto fix = integral_fixture_from_json<S>(json::parse(read_file(a.fixture)));
    report["inputs"] = {{"fixture", input_echo(a.fixture)}};
    const auto params = fix.all_params();
    const auto rep = check_kernel_conditions(fix.kernels, params, fix.Y, fix.triples, tolerance_of<S>(g));
    report["results"] = violations_to_json(rep);
    emit(g, report, clock);
    return rep.ok() ? 0 : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distances on finite metric configurations: Hausdorff, set-valued decompositions, "
                 "relational and integral generalizations, move-graph and Gromov-Hausdorff distances"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--out", g.out, "write the JSON report to this file instead of stdout");
    app.add_option("--tolerance", g.tolerance, "audit tolerance (default: 0 exact, 1e-9 floating)");
    app.add_option("--seed", g.seed, "seed echoed into reports");
    app.add_option("--backend", g.backend, "numeric backend: auto|rational|double");
    app.add_flag("--timing", g.timing, "include timing in the report (breaks byte-stability)");

    DistOpts d;
    auto* dist = app.add_subcommand("dist", "evaluate one distance family on a pair of point sets");
    dist->add_option("--family", d.family, "hausdorff|ur|cur|lr|lp|coupled|weighted|extended");
    dist->add_option("--space", d.space_file, "shared space (matrix CSV/JSON, or cloud with --metric)");
    dist->add_option("--a", d.a, "members of A (list) or a point-cloud file");
    dist->add_option("--b", d.b, "members of B (list) or a point-cloud file");
    dist->add_option("--metric", d.metric, "point-cloud metric: euclidean|manhattan|chebyshev");
    dist->add_option("--form", d.form, "hausdorff formulation: maxsup|infr|supunion|supambient");
    dist->add_option("--sel", d.sel, "relation selection: rh|complete|full|threshold:<r>|custom:<file>");
    dist->add_option("--p", d.p, "exponent: integer >= 1 or inf");
    dist->add_option("--fixture", d.fixture, "integral fixture JSON (coupled/weighted/extended)");
    dist->add_option("--F", d.F, "outer shape expression in t (extended)");
    dist->add_option("--G", d.G, "inner shape expression in r,s,t (extended)");
    dist->add_option("--alpha", d.alpha, "constant alpha weight (weighted)");
    dist->add_option("--beta", d.beta, "constant beta weight (weighted)");
    dist->add_option("--coord-metric", d.coord_metric, "metric for translated coordinates (weighted)");
    dist->add_option("--sweep-p", d.sweep_p, "emit a distance-vs-p series (lp family; CSV when --out ends in .csv)");

    AuditOpts a;
    auto* audit = app.add_subcommand("audit", "exhaustive metric-axiom audit of a family over a corpus");
    audit->add_option("--family", a.family, "hausdorff|ur|cur|lr|lp|coupled|weighted|extended|algebra");
    audit->add_option("--space", a.space_file, "space whose nonempty subsets form the corpus");
    audit->add_option("--metric", a.metric, "point-cloud metric flag");
    audit->add_option("--sel", a.sel, "relation selection for ur/cur/lr");
    audit->add_option("--p", a.p, "exponent for lp/coupled");
    audit->add_option("--fixture", a.fixture, "fixture JSON for algebra/coupled");
    audit->add_option("--max-points", a.max_points, "guard on exhaustive subset corpora");
    audit->add_flag("--semimetric", a.semimetric, "accept a matrix violating the triangle inequality");
    audit->add_option("--F", a.F, "outer shape expression (extended family)");
    audit->add_option("--G", a.G, "inner shape expression (extended family)");

    AuditOpts dec;
    auto* decompose = app.add_subcommand("decompose", "verify both Hausdorff decompositions plus all axiom checks");
    decompose->add_option("--space", dec.space_file, "space whose nonempty subsets form the corpus");
    decompose->add_option("--metric", dec.metric, "point-cloud metric flag");
    decompose->add_option("--max-points", dec.max_points, "guard on the exhaustive corpus");

    TopologyOpts t;
    auto* topology = app.add_subcommand("topology", "enumerate a symmetric-difference sv-metric topology");
    topology->add_option("--ground", t.ground, "comma-separated ground element names");
    topology->add_option("--carrier", t.carrier, "all|proper|semicolon-separated subsets");
    topology->add_option("--eps-pool", t.eps_pool, "semicolon-separated eps subsets");
    topology->add_option("--guard", t.guard, "carrier-size guard for open-set enumeration");

    HyperpathOpts h;
    auto* hyper = app.add_subcommand("hyperpath", "shortest move-path distance in FS_m");
    hyper->add_option("--ground", h.ground_file, "ground space file");
    hyper->add_option("--metric", h.metric, "point-cloud metric flag");
    hyper->add_option("--m", h.m, "largest subset size");
    hyper->add_option("--rule", h.rule, "move rule: complete|swap|step");
    hyper->add_option("--from", h.from, "source subset members");
    hyper->add_option("--to", h.to, "target subset members");
    hyper->add_option("--sweep-m", h.sweep_m, "emit a dm-vs-m series (CSV when --out ends in .csv)");

    GeoOpts geo;
    auto* geo_cmd = app.add_subcommand("geo", "distances between finite metric spaces");
    geo_cmd->require_subcommand(1);
    auto* gh = geo_cmd->add_subcommand("gh", "Gromov-Hausdorff distance");
    gh->add_option("--x", geo.x_file, "first space");
    gh->add_option("--y", geo.y_file, "second space");
    gh->add_option("--metric", geo.metric, "point-cloud metric flag");
    auto* embed = geo_cmd->add_subcommand("embed", "least base distance over candidate gluings");
    embed->add_option("--x", geo.x_file, "first space");
    embed->add_option("--y", geo.y_file, "second space");
    embed->add_option("--metric", geo.metric, "point-cloud metric flag");
    embed->add_option("--grid", geo.grid, "auto:<levels> or a JSON file of cross matrices");
    embed->add_option("--base", geo.base, "hausdorff|cur:all_complete|ur:<sel>");

    AuditOpts k;
    auto* kernels = app.add_subcommand("kernels-check", "verify kernel conditions of an integral fixture");
    kernels->add_option("--fixture", k.fixture, "integral fixture JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dist) return use_rational(g, d.metric) ? run_dist<Rational>(g, d) : run_dist<double>(g, d);
        if (*audit) return use_rational(g, a.metric) ? run_audit<Rational>(g, a) : run_audit<double>(g, a);
        if (*decompose)
            return use_rational(g, dec.metric) ? run_decompose<Rational>(g, dec) : run_decompose<double>(g, dec);
        if (*topology) return run_topology(g, t);
        if (*hyper) return use_rational(g, h.metric) ? run_hyperpath<Rational>(g, h) : run_hyperpath<double>(g, h);
        if (*gh) return use_rational(g, geo.metric) ? run_geo<Rational>(g, geo, false) : run_geo<double>(g, geo, false);
        if (*embed)
            return use_rational(g, geo.metric) ? run_geo<Rational>(g, geo, true) : run_geo<double>(g, geo, true);
        if (*kernels)
            return use_rational(g, "") ? run_kernels_check<Rational>(g, k) : run_kernels_check<double>(g, k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
