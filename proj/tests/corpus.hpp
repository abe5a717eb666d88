#pragma once

// Shared fixture generators for the test and acceptance suites.

#include <random>
#include <vector>

#include "hausd/metric_space.hpp"

namespace corpus {

/// Points 0..n-1 on the integer line, d(i,j) = |i - j|.
template <class S>
hausd::FiniteMetricSpace<S> line_space(int n) {
    std::vector<std::string> labels(n);
    std::vector<std::vector<S>> dmat(n, std::vector<S>(n, S(0)));
    for (int i = 0; i < n; ++i) {
        labels[i] = std::to_string(i);
        for (int j = 0; j < n; ++j) dmat[i][j] = S(i > j ? i - j : j - i);
    }
    return hausd::FiniteMetricSpace<S>::metric(std::move(labels), std::move(dmat));
}

/// A random genuine metric with small integer values: a random symmetric
/// integer matrix repaired by shortest-path completion, so the triangle
/// inequality holds and entries stay exactly representable in any backend.
template <class S>
hausd::FiniteMetricSpace<S> random_int_metric(int n, std::mt19937_64& rng, int lo = 1, int hi = 9) {
    std::uniform_int_distribution<int> pick(lo, hi);
    std::vector<std::vector<S>> dmat(n, std::vector<S>(n, S(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dmat[i][j] = dmat[j][i] = S(pick(rng));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dmat[i][j] = std::min(dmat[i][j], dmat[i][k] + dmat[k][j]);
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    return hausd::FiniteMetricSpace<S>::metric(std::move(labels), std::move(dmat));
}

/// A random euclidean point cloud (floating backend only).
inline hausd::FiniteMetricSpace<double> random_euclidean(int n, int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts)
        for (double& c : p) c = coord(rng);
    return hausd::FiniteMetricSpace<double>::from_points(std::move(pts), hausd::PointMetric::Euclidean);
}

template <class S>
hausd::PointSet<S> set_of(const hausd::FiniteMetricSpace<S>& sp, std::vector<int> members) {
    return hausd::PointSet<S>(&sp, std::move(members));
}

}  // namespace corpus
