/*
Copyright 2026 The reprank Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Shared fixtures for unit and acceptance tests.

#ifndef REPRANK_TESTS_ORACLE_FIXTURES_HPP
#define REPRANK_TESTS_ORACLE_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "reference.hpp"
#include "reprank/graph.hpp"

namespace oracle {

inline reprank::RatingGraph to_graph(const Matrix& m) {
    std::vector<reprank::Link> links;
    for (reprank::Index u = 0; u < m.size(); ++u) {
        for (reprank::Index a = 0; a < m[u].size(); ++a) {
            if (rated(m[u][a])) links.push_back({u, a, m[u][a]});
        }
    }
    return reprank::RatingGraph(m.size(), m.empty() ? 0 : m[0].size(), std::move(links));
}

/// Random integer-star matrix in which every user and every item has at
/// least one rating.
inline Matrix random_matrix(std::size_t users, std::size_t items, double density, std::mt19937_64& rng) {
    const double none = std::numeric_limits<double>::quiet_NaN();
    std::uniform_int_distribution<int> star(1, 5);
    std::bernoulli_distribution keep(density);
    Matrix m(users, std::vector<double>(items, none));
    for (auto& row : m)
        for (auto& r : row)
            if (keep(rng)) r = star(rng);
    for (std::size_t u = 0; u < users; ++u) {
        if (std::none_of(m[u].begin(), m[u].end(), rated)) m[u][rng() % items] = star(rng);
    }
    for (std::size_t a = 0; a < items; ++a) {
        bool any = false;
        for (std::size_t u = 0; u < users; ++u) any = any || rated(m[u][a]);
        if (!any) m[rng() % users][a] = star(rng);
    }
    return m;
}

inline constexpr double X = std::numeric_limits<double>::quiet_NaN();

/// Hand-built networks for fixed-point comparisons.
inline Matrix toy_four_by_four() {
    return {{5, 4, 2, 1}, {4, 5, 1, 2}, {5, 3, 2, X}, {X, 4, 3, 1}};
}

/// Four consistent raters and one spammer (last row).
inline Matrix toy_with_spammer() {
    return {{5, 4, 3, 2, 1}, {5, 5, 3, 2, 1}, {4, 4, 3, 1, 1}, {5, 3, 3, 2, 2}, {1, 3, 5, 2, 4}};
}

inline Matrix toy_sparse() {
    return {{5, 3, 1, X}, {4, X, 2, 1}, {X, 4, 1, 2}, {5, 4, X, 1}};
}

inline Matrix toy_three_by_two() {
    return {{5, 2}, {4, 3}, {1, 5}};
}

}  // namespace oracle

#endif  // REPRANK_TESTS_ORACLE_FIXTURES_HPP
