#pragma once

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hausd/algebra.hpp"
#include "hausd/integral.hpp"
#include "hausd/metric_space.hpp"

namespace hausd {

using json = nlohmann::ordered_json;

template <class S>
S parse_scalar(const std::string& token);

template <>
inline double parse_scalar<double>(const std::string& token) {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad numeric token '" + token + "'");
    return v;
}

template <>
inline Rational parse_scalar<Rational>(const std::string& token) {
    return Rational::parse(token);
}

/// Scalar from a JSON value: numbers are taken at their double value (exact
/// binary rationals), strings go through the exact parser.
template <class S>
S scalar_from_json(const json& v) {
    if (v.is_string()) return parse_scalar<S>(v.get<std::string>());
    if (v.is_number_integer()) {
        if constexpr (std::is_same_v<S, double>) return static_cast<double>(v.get<long>());
        else return S(v.get<long>());
    }
    if (v.is_number_float()) {
        if constexpr (std::is_same_v<S, double>) return v.get<double>();
        else {
            // binary doubles are exact rationals: scale the mantissa back up
            double d = v.get<double>();
            mpq_class q(d);
            return Rational(q);
        }
    }
    throw std::invalid_argument("expected a number, got " + v.dump());
}

template <class S>
json scalar_to_json(const S& v) {
    if constexpr (std::is_same_v<S, double>) return v;
    else {
        json out;
        out["num"] = num::to_double(v);
        out["exact"] = v.str();
        return out;
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// FNV-1a digest of raw file bytes, for the report's input echo.
inline std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::vector<std::vector<std::string>> tokenize_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            cell.erase(0, cell.find_first_not_of(" \t"));
            cell.erase(cell.find_last_not_of(" \t") + 1);
            cells.push_back(cell);
        }
        if (!cells.empty()) rows.push_back(std::move(cells));
    }
    return rows;
}

/// Square distance-matrix CSV (numeric cells, optional comment lines).
template <class S>
FiniteMetricSpace<S> space_from_csv_matrix(const std::string& text, bool require_triangle = true) {
    const auto rows = tokenize_csv(text);
    if (rows.empty()) throw std::invalid_argument("empty distance matrix");
    std::vector<std::vector<S>> dmat;
    for (const auto& row : rows) {
        std::vector<S> r;
        for (const auto& cell : row) r.push_back(parse_scalar<S>(cell));
        dmat.push_back(std::move(r));
    }
    std::vector<std::string> labels(dmat.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "p" + std::to_string(i);
    return require_triangle ? FiniteMetricSpace<S>::metric(std::move(labels), std::move(dmat))
                            : FiniteMetricSpace<S>::semimetric(std::move(labels), std::move(dmat));
}

/// Point-cloud CSV: one coordinate row per point; the metric flag selects
/// how the matrix is induced.
template <class S>
FiniteMetricSpace<S> space_from_csv_cloud(const std::string& text, PointMetric metric) {
    const auto rows = tokenize_csv(text);
    if (rows.empty()) throw std::invalid_argument("empty point cloud");
    std::vector<std::vector<S>> coords;
    for (const auto& row : rows) {
        std::vector<S> r;
        for (const auto& cell : row) r.push_back(parse_scalar<S>(cell));
        coords.push_back(std::move(r));
    }
    return FiniteMetricSpace<S>::from_points(std::move(coords), metric);
}

/// JSON space: {"points": [names], "dmat": [[...]]}.
template <class S>
FiniteMetricSpace<S> space_from_json(const json& j, bool require_triangle = true) {
    if (!j.contains("dmat")) throw std::invalid_argument("space JSON needs a 'dmat' field");
    std::vector<std::vector<S>> dmat;
    for (const auto& row : j.at("dmat")) {
        std::vector<S> r;
        for (const auto& cell : row) r.push_back(scalar_from_json<S>(cell));
        dmat.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (j.contains("points"))
        for (const auto& p : j.at("points")) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    else {
        labels.resize(dmat.size());
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "p" + std::to_string(i);
    }
    return require_triangle ? FiniteMetricSpace<S>::metric(std::move(labels), std::move(dmat))
                            : FiniteMetricSpace<S>::semimetric(std::move(labels), std::move(dmat));
}

inline PointMetric point_metric_from_name(const std::string& name) {
    if (name == "euclidean") return PointMetric::Euclidean;
    if (name == "manhattan") return PointMetric::Manhattan;
    if (name == "chebyshev") return PointMetric::Chebyshev;
    throw std::invalid_argument("unknown point metric '" + name + "'");
}

/// Loads a space from a file: .json dispatches on fields, .csv on --metric
/// (matrix when absent).
template <class S>
FiniteMetricSpace<S> load_space(const std::string& path, const std::string& metric_flag = "",
                                bool require_triangle = true) {
    const std::string text = read_file(path);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return space_from_json<S>(json::parse(text), require_triangle);
    if (!metric_flag.empty()) return space_from_csv_cloud<S>(text, point_metric_from_name(metric_flag));
    return space_from_csv_matrix<S>(text, require_triangle);
}

/// Member list "0,2,3" or "a,b" resolved against a space (indices first,
/// labels as fallback).
template <class S>
std::vector<int> parse_member_list(const FiniteMetricSpace<S>& sp, const std::string& list) {
    std::vector<int> out;
    std::istringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) continue;
        bool numeric = !tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos;
        if (numeric) out.push_back(std::stoi(tok));
        else out.push_back(sp.index_of(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty member list '" + list + "'");
    return out;
}

// ---------------------------------------------------------------------------
// Algebra fixtures

/// A table-driven algebra over element indices, with an optional postmeasure.
template <class S>
struct AlgebraFixture {
    PartialAlgebra<int> algebra;
    std::vector<std::string> element_names;
    std::function<S(const int&)> mu;  // empty when the fixture has no "mu"
    bool has_mu = false;
};

/// Fixture format: {"elements": [...], "leq": "builtin:subset" | [[i,j],...],
/// "join": "builtin:union" | n x n table, "zero": index-or-name,
/// "mu": [values]}. With builtin:subset the elements are arrays of ground
/// names and the carrier must be union-closed.
template <class S>
AlgebraFixture<S> algebra_from_json(const json& j) {
    AlgebraFixture<S> fix;
    if (!j.contains("elements")) throw std::invalid_argument("algebra fixture needs 'elements'");
    const json& els = j.at("elements");
    const int n = static_cast<int>(els.size());
    if (n == 0) throw std::invalid_argument("algebra fixture: empty carrier");

    for (const auto& e : els) fix.element_names.push_back(e.is_string() ? e.get<std::string>() : e.dump());

    auto resolve = [&](const json& v) -> int {
        if (v.is_number_integer()) {
            int idx = v.get<int>();
            if (idx < 0 || idx >= n) throw std::invalid_argument("algebra fixture: element index out of range");
            return idx;
        }
        const std::string name = v.get<std::string>();
        for (int i = 0; i < n; ++i)
            if (fix.element_names[i] == name) return i;
        throw std::invalid_argument("algebra fixture: unknown element '" + name + "'");
    };

    const std::string leq_kind = j.at("leq").is_string() ? j.at("leq").get<std::string>() : "table";
    PartialAlgebra<int> alg;
    alg.name = "fixture";
    for (int i = 0; i < n; ++i) alg.elements.push_back(i);
    alg.show = [names = fix.element_names](const int& i) { return names[i]; };

    if (leq_kind == "builtin:subset") {
        // elements are arrays of ground names -> masks
        std::map<std::string, int> ground;
        std::vector<SubsetMask> masks;
        for (const auto& e : els) {
            SubsetMask m = 0;
            for (const auto& g : e) {
                const std::string name = g.get<std::string>();
                auto [it, fresh] = ground.insert({name, static_cast<int>(ground.size())});
                if (it->second >= 20) throw std::invalid_argument("algebra fixture: ground set too large");
                m |= SubsetMask(1) << it->second;
            }
            masks.push_back(m);
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (std::find(masks.begin(), masks.end(), masks[a] | masks[b]) == masks.end())
                    throw std::invalid_argument("algebra fixture: carrier is not union-closed");
        alg.leq = [masks](const int& a, const int& b) { return (masks[a] & ~masks[b]) == 0; };
        alg.join = [masks](const int& a, const int& b) {
            const SubsetMask u = masks[a] | masks[b];
            for (std::size_t i = 0; i < masks.size(); ++i)
                if (masks[i] == u) return static_cast<int>(i);
            return -1;  // unreachable after the closure check
        };
        alg.equiv = [](const int& a, const int& b) { return a == b; };
    } else {
        std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) leq[i][i] = true;
        for (const auto& pair : j.at("leq")) leq[resolve(pair.at(0))][resolve(pair.at(1))] = true;
        const json& jt = j.at("join");
        std::vector<std::vector<int>> join(n, std::vector<int>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) join[a][b] = resolve(jt.at(a).at(b));
        alg.leq = [leq](const int& a, const int& b) { return leq[a][b]; };
        alg.join = [join](const int& a, const int& b) { return join[a][b]; };
        alg.equiv = [leq](const int& a, const int& b) { return leq[a][b] && leq[b][a]; };
    }
    alg.zero = resolve(j.at("zero"));
    fix.algebra = std::move(alg);

    if (j.contains("mu")) {
        std::vector<S> mu;
        for (const auto& v : j.at("mu")) mu.push_back(scalar_from_json<S>(v));
        if (static_cast<int>(mu.size()) != n) throw std::invalid_argument("algebra fixture: mu length mismatch");
        fix.mu = [mu](const int& i) { return mu[i]; };
        fix.has_mu = true;
    }
    return fix;
}

// ---------------------------------------------------------------------------
// Integral fixtures

/// Owned data for an integral-distance scenario: ambient measured space,
/// index measure space, named parameterizations, rho weights, and kernels
/// keyed "f,g" by parameter names. IndexedSets are built on demand against
/// this object's storage, so keep it alive while they are in use.
template <class S>
struct IntegralFixture {
    FiniteMetricSpace<S> X;
    DiscreteMeasureSpace<S> nu;
    DiscreteMeasureSpace<S> Y;
    std::vector<std::string> param_names;
    std::map<std::string, std::vector<int>> params;
    std::vector<S> rho;
    KernelFamily<S> kernels;
    std::vector<std::array<int, 3>> triples;

    int param_id(const std::string& name) const {
        for (std::size_t i = 0; i < param_names.size(); ++i)
            if (param_names[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("unknown parameterization '" + name + "'");
    }
    IndexedSet<S> param(const std::string& name) const {
        return IndexedSet<S>(&X, &Y, params.at(name));
    }
    std::vector<IndexedSet<S>> all_params() const {
        std::vector<IndexedSet<S>> out;
        for (const auto& n : param_names) out.push_back(param(n));
        return out;
    }
};

/// Fixture format: {"X": {"points":..., "dmat":..., "nu": [...]},
/// "Y": {"labels": [...], "mu": [...]}, "f": [...], "g": [...], optional
/// extra parameterizations under "params", "rho": [...], "kernels":
/// {"f,g": [dense x-major array]}, optional "triples": [["f","h","g"],...]}.
template <class S>
IntegralFixture<S> integral_fixture_from_json(const json& j) {
    const json& jx = j.at("X");
    FiniteMetricSpace<S> X = [&] {
        if (jx.contains("cloud")) {
            std::vector<std::vector<S>> coords;
            for (const auto& row : jx.at("cloud")) {
                std::vector<S> c;
                for (const auto& cell : row) c.push_back(scalar_from_json<S>(cell));
                coords.push_back(std::move(c));
            }
            const std::string metric = jx.contains("metric") ? jx.at("metric").get<std::string>() : "manhattan";
            return FiniteMetricSpace<S>::from_points(std::move(coords), point_metric_from_name(metric));
        }
        return space_from_json<S>(jx);
    }();
    std::vector<S> nu_w;
    if (jx.contains("nu"))
        for (const auto& v : jx.at("nu")) nu_w.push_back(scalar_from_json<S>(v));
    else nu_w.assign(X.size(), S(1));
    DiscreteMeasureSpace<S> nu(X.labels(), std::move(nu_w));

    const json& jy = j.at("Y");
    std::vector<std::string> ylabels;
    if (jy.contains("labels"))
        for (const auto& v : jy.at("labels")) ylabels.push_back(v.get<std::string>());
    else {
        const int ny = jy.at("size").get<int>();
        for (int i = 0; i < ny; ++i) ylabels.push_back("y" + std::to_string(i));
    }
    std::vector<S> mu_w;
    if (jy.contains("mu"))
        for (const auto& v : jy.at("mu")) mu_w.push_back(scalar_from_json<S>(v));
    else mu_w.assign(ylabels.size(), S(1));
    DiscreteMeasureSpace<S> Y(std::move(ylabels), std::move(mu_w));

    IntegralFixture<S> fix{std::move(X), std::move(nu), std::move(Y), {}, {}, {}, {}, {}};

    auto add_param = [&](const std::string& name, const json& arr) {
        std::vector<int> map;
        for (const auto& v : arr) map.push_back(v.get<int>());
        fix.param_names.push_back(name);
        fix.params[name] = std::move(map);
    };
    for (const std::string name : {"f", "g", "h"})
        if (j.contains(name)) add_param(name, j.at(name));
    if (j.contains("params"))
        for (const auto& [name, arr] : j.at("params").items()) add_param(name, arr);
    if (fix.params.count("f") == 0 || fix.params.count("g") == 0)
        throw std::invalid_argument("integral fixture needs parameterizations 'f' and 'g'");

    if (j.contains("rho"))
        for (const auto& v : j.at("rho")) fix.rho.push_back(scalar_from_json<S>(v));
    else fix.rho.assign(fix.X.size(), S(1));

    if (j.contains("kernels"))
        for (const auto& [key, arr] : j.at("kernels").items()) {
            const auto comma = key.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("kernel key must be 'name,name', got '" + key + "'");
            const int fid = fix.param_id(key.substr(0, comma));
            const int gid = fix.param_id(key.substr(comma + 1));
            std::vector<S> c;
            for (const auto& v : arr) c.push_back(scalar_from_json<S>(v));
            fix.kernels.by_pair.insert({{fid, gid}, Kernel<S>(fix.X.size(), fix.Y.size(), std::move(c))});
        }

    if (j.contains("triples"))
        for (const auto& t : j.at("triples"))
            fix.triples.push_back({fix.param_id(t.at(0).get<std::string>()), fix.param_id(t.at(1).get<std::string>()),
                                   fix.param_id(t.at(2).get<std::string>())});
    return fix;
}

// ---------------------------------------------------------------------------
// Report serialization

inline json violations_to_json(const AxiomReport& rep) {
    json out;
    out["subject"] = rep.subject;
    out["checks"] = rep.checks;
    out["ok"] = rep.ok();
    out["violations"] = json::array();
    for (const auto& v : rep.violations) {
        json jv;
        jv["axiom"] = v.axiom;
        jv["witness"] = v.witness;
        if (!v.detail.empty()) jv["detail"] = v.detail;
        out["violations"].push_back(jv);
    }
    return out;
}

template <class S>
json dist_value_to_json(const DistValue<S>& v) {
    json out;
    switch (v.kind) {
        case DistKind::Value:
            out["value"] = num::to_double(v.value);
            if constexpr (!std::is_same_v<S, double>) out["value_exact"] = v.value.str();
            break;
        case DistKind::Undefined:
            out["undefined"] = v.note;
            break;
        case DistKind::Infinite:
            out["infinite"] = true;
            break;
    }
    return out;
}

}  // namespace hausd
