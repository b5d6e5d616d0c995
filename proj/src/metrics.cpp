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

#include "reprank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace reprank {

std::vector<double> midranks(std::span<const double> qualities) {
    const auto n = qualities.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Descending by quality, NaN last. Index order inside ties is irrelevant
    // since ties share a rank; stable_sort just keeps the result reproducible.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double qx = qualities[x];
        const double qy = qualities[y];
        if (std::isnan(qx)) return false;
        if (std::isnan(qy)) return true;
        return qx > qy;
    });
    const auto same = [&](std::size_t x, std::size_t y) {
        const double qx = qualities[x];
        const double qy = qualities[y];
        return (std::isnan(qx) && std::isnan(qy)) || qx == qy;
    };
    std::vector<double> ranks(n);
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && same(order[begin], order[end])) ++end;
        // Positions begin+1 .. end, averaged.
        const double mid = (static_cast<double>(begin + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = begin; k < end; ++k) ranks[order[k]] = mid;
        begin = end;
    }
    return ranks;
}

RankingScore ranking_score(std::span<const double> qualities, const BenchmarkSet& benchmark) {
    if (qualities.empty()) throw std::invalid_argument("ranking score needs at least one item");
    if (benchmark.size() == 0) throw DataError("empty benchmark set");
    const auto ranks = midranks(qualities);
    const auto m = static_cast<double>(qualities.size());
    double sum = 0.0;
    for (const Index a : benchmark.items()) {
        if (a >= qualities.size()) throw std::invalid_argument("benchmark item index out of range");
        sum += ranks[a] / m;
    }
    return {sum / static_cast<double>(benchmark.size()), benchmark.size()};
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least two samples");
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx;
        const double dy = y[k] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const auto flat = [n](double s, double mean) { return s <= 1e-24 * n * mean * mean || s <= 0.0; };
    if (flat(sxx, mx) || flat(syy, my)) return {0.0, true};
    const double r = sxy / std::sqrt(sxx * syy);
    return {std::clamp(r, -1.0, 1.0), false};
}

Correlation reputation_error_correlation(std::span<const double> reputations, std::span<const double> true_errors) {
    if (reputations.size() != true_errors.size()) {
        throw std::invalid_argument("correlation: length mismatch (" + std::to_string(reputations.size()) + " vs " +
                                    std::to_string(true_errors.size()) + ")");
    }
    std::vector<double> r;
    std::vector<double> e;
    r.reserve(reputations.size());
    e.reserve(reputations.size());
    for (std::size_t k = 0; k < reputations.size(); ++k) {
        if (std::isfinite(reputations[k]) && std::isfinite(true_errors[k])) {
            r.push_back(reputations[k]);
            e.push_back(true_errors[k]);
        }
    }
    return pearson(r, e);
}

BenchmarkSet top_fraction_benchmark(std::span<const double> intrinsic_quality, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in (0,1]");
    const auto n = intrinsic_quality.size();
    if (n == 0) throw DataError("empty benchmark set");
    // Guard against products like 0.05 * 4000 landing a hair above an integer.
    auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    count = std::clamp<std::size_t>(count, 1, n);
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](Index x, Index y) {
                          if (intrinsic_quality[x] != intrinsic_quality[y]) {
                              return intrinsic_quality[x] > intrinsic_quality[y];
                          }
                          return x < y;
                      });
    order.resize(count);
    return BenchmarkSet(std::move(order), n);
}

}  // namespace reprank
