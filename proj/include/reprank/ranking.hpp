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

#ifndef REPRANK_RANKING_HPP
#define REPRANK_RANKING_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "reprank/graph.hpp"

namespace reprank {

enum class Algorithm { kMean, kIr, kCr, kRr };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Quality assigned to items nobody rated. Metrics rank it after every rated
/// item.
inline constexpr double kUnrated = std::numeric_limits<double>::quiet_NaN();

/// Called after each completed iteration with that iteration's qualities and
/// the reputations derived from them.
using IterationObserver =
    std::function<void(std::size_t iteration, std::span<const double> qualities, std::span<const double> reputations)>;

struct RankingConfig {
    Algorithm algorithm = Algorithm::kRr;
    double beta = 1.0;       // IR reputation exponent
    double epsilon = 1e-8;   // IR regularizer inside the power
    double theta = 5.0;      // RR redistribution exponent
    double delta = 1e-4;     // stop once the mean squared quality change drops below this
    std::size_t max_iterations = 1000;

    // RR ablation switches. With both off and theta = 1 RR reduces to CR.
    bool penalty_factor = true;  // scale Q_a by the largest rater reputation
    bool degree_damping = true;  // scale TR_i by lg(k_i) / max_j lg(k_j)

    IterationObserver observer;

    void validate() const;
};

struct RankingResult {
    std::vector<double> reputations;  // R_i, one per user
    std::vector<double> qualities;    // Q_a, one per item (kUnrated if k_a = 0)
    std::size_t iterations_used = 0;
    bool converged = false;
    double final_residual = std::numeric_limits<double>::infinity();
};

/// Mean rating per item; every reputation is 1.
RankingResult rank_mean(const RatingGraph& g);

/// Iterative refinement: Q is the reputation-weighted mean rating, and
/// R_i = (MSE_i + epsilon)^-beta with MSE_i over the items user i rated.
/// Starts from R_i = 1.
RankingResult rank_ir(const RatingGraph& g, const RankingConfig& cfg = {});

/// Correlation-based ranking: R_i is the (non-negative part of the) Pearson
/// correlation between user i's ratings and the current qualities of the
/// items they rated. Starts from R_i = k_i / |O|.
RankingResult rank_cr(const RatingGraph& g, const RankingConfig& cfg = {});

/// Reputation redistribution: CR plus the max-rater penalty on Q, the
/// log-degree damping on TR and the TR^theta redistribution of reputation.
RankingResult rank_rr(const RatingGraph& g, const RankingConfig& cfg = {});

/// Dispatches on cfg.algorithm.
RankingResult rank(const RatingGraph& g, const RankingConfig& cfg);

/// Mean squared difference over all positions. Positions where both entries
/// are kUnrated count as equal.
double residual(std::span<const double> q_new, std::span<const double> q_old);

}  // namespace reprank

#endif  // REPRANK_RANKING_HPP
