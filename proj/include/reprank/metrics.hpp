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

#ifndef REPRANK_METRICS_HPP
#define REPRANK_METRICS_HPP

#include <span>
#include <vector>

#include "reprank/graph.hpp"

namespace reprank {

struct RankingScore {
    double value;                // in (0, 1], lower is better
    std::size_t benchmark_size;  // |E|
};

/// 1-based positions in the quality-descending order. Tied items share the
/// average of the positions they span; unrated (NaN) items follow every
/// rated item and tie among themselves.
std::vector<double> midranks(std::span<const double> qualities);

/// Mean of D_a / M over the benchmark items, with D_a the midrank of item a
/// and M the number of items.
RankingScore ranking_score(std::span<const double> qualities, const BenchmarkSet& benchmark);

struct Correlation {
    double value;     // Pearson coefficient, 0 when degenerate
    bool degenerate;  // one side had zero variance
};

/// Plain Pearson coefficient. Throws on length mismatch or fewer than two
/// samples.
Correlation pearson(std::span<const double> x, std::span<const double> y);

/// Pearson(R_i, e_i) over users. Pairs with a non-finite entry on either
/// side (users absent from a truth file) are dropped first.
Correlation reputation_error_correlation(std::span<const double> reputations, std::span<const double> true_errors);

/// The ceil(fraction * |O|) items with the largest intrinsic quality; ties at
/// the cut go to the smaller item index.
BenchmarkSet top_fraction_benchmark(std::span<const double> intrinsic_quality, double fraction);

}  // namespace reprank

#endif  // REPRANK_METRICS_HPP
