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

#include "reprank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace reprank {

namespace {

bool is_unrated(double q) { return std::isnan(q); }

// Q_a = sum(R_i r_ia) / sum(R_i), optionally scaled by max R_i over U_a.
// Items whose raters all carry zero reputation fall back to the plain mean.
void update_qualities(const RatingGraph& g, std::span<const double> reputations, bool penalty,
                      std::vector<double>& qualities) {
    for (Index a = 0; a < g.num_items(); ++a) {
        const auto raters = g.item_ratings(a);
        if (raters.empty()) {
            qualities[a] = kUnrated;
            continue;
        }
        double weight = 0.0;
        double weighted = 0.0;
        double largest = 0.0;
        for (const auto& [u, r] : raters) {
            const double rep = reputations[u];
            weight += rep;
            weighted += rep * r;
            largest = std::max(largest, rep);
        }
        if (weight > 0.0) {
            qualities[a] = weighted / weight;
            if (penalty) qualities[a] *= largest;
        } else {
            double sum = 0.0;
            for (const auto& nb : raters) sum += nb.rating;
            qualities[a] = sum / static_cast<double>(raters.size());
        }
    }
}

bool negligible_variance(double variance, double mean) {
    return variance <= 1e-24 * mean * mean || variance <= 0.0;
}

// Pearson correlation between a user's ratings and the current qualities of
// the items they rated, written as the mean product of z-scores. Users with
// fewer than two ratings or a constant side contribute 0.
double user_correlation(std::span<const Neighbor> rated, std::span<const double> qualities) {
    const auto k = static_cast<double>(rated.size());
    if (rated.size() < 2) return 0.0;
    double mean_r = 0.0;
    double mean_q = 0.0;
    for (const auto& [a, r] : rated) {
        mean_r += r;
        mean_q += qualities[a];
    }
    mean_r /= k;
    mean_q /= k;
    double var_r = 0.0;
    double var_q = 0.0;
    for (const auto& [a, r] : rated) {
        var_r += (r - mean_r) * (r - mean_r);
        var_q += (qualities[a] - mean_q) * (qualities[a] - mean_q);
    }
    var_r /= k;
    var_q /= k;
    if (negligible_variance(var_r, mean_r) || negligible_variance(var_q, mean_q)) return 0.0;
    const double sd_r = std::sqrt(var_r);
    const double sd_q = std::sqrt(var_q);
    double sum = 0.0;
    for (const auto& [a, r] : rated) sum += ((r - mean_r) / sd_r) * ((qualities[a] - mean_q) / sd_q);
    return sum / k;
}

// Temporal reputation TR_i, clamped at zero.
void temporal_reputation(const RatingGraph& g, std::span<const double> qualities, std::span<const double> damping,
                         std::vector<double>& out) {
    for (Index u = 0; u < g.num_users(); ++u) {
        double tr = user_correlation(g.user_ratings(u), qualities);
        if (!damping.empty()) tr *= damping[u];
        out[u] = std::max(tr, 0.0);
    }
}

// R_i = TR_i^theta * sum(TR) / sum(TR^theta). All-zero TR yields all-zero R.
void redistribute(std::span<const double> temporal, double theta, std::vector<double>& reputations) {
    double total = 0.0;
    double total_pow = 0.0;
    for (std::size_t u = 0; u < temporal.size(); ++u) {
        reputations[u] = std::pow(temporal[u], theta);
        total += temporal[u];
        total_pow += reputations[u];
    }
    if (!(total_pow > 0.0) || !std::isfinite(total_pow)) {
        std::fill(reputations.begin(), reputations.end(), 0.0);
        return;
    }
    const double scale = total / total_pow;
    for (auto& r : reputations) r *= scale;
}

std::vector<double> degree_damping(const RatingGraph& g) {
    std::vector<double> lg(g.num_users(), 0.0);
    double largest = 0.0;
    for (Index u = 0; u < g.num_users(); ++u) {
        const auto k = g.user_degree(u);
        if (k > 0) lg[u] = std::log10(static_cast<double>(k));
        largest = std::max(largest, lg[u]);
    }
    for (auto& v : lg) v = largest > 0.0 ? v / largest : 0.0;
    return lg;
}

std::vector<double> degree_share(const RatingGraph& g) {
    std::vector<double> r(g.num_users());
    const auto items = static_cast<double>(std::max<std::size_t>(g.num_items(), 1));
    for (Index u = 0; u < g.num_users(); ++u) r[u] = static_cast<double>(g.user_degree(u)) / items;
    return r;
}

// Synchronous fixed-point loop shared by IR, CR and RR: every iteration
// computes all qualities from the previous reputations, then all
// reputations from the new qualities. The residual compares consecutive
// quality vectors and so exists from the second iteration on.
template <class ReputationStep>
RankingResult iterate(const RatingGraph& g, const RankingConfig& cfg, std::vector<double> reputations,
                      bool penalty, ReputationStep&& reputation_step) {
    cfg.validate();
    RankingResult result;
    std::vector<double> qualities(g.num_items());
    std::vector<double> previous;
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        update_qualities(g, reputations, penalty, qualities);
        reputation_step(qualities, reputations);
        result.iterations_used = it;
        if (cfg.observer) cfg.observer(it, qualities, reputations);
        if (it > 1) {
            result.final_residual = residual(qualities, previous);
            if (result.final_residual < cfg.delta) {
                result.converged = true;
                break;
            }
        }
        previous = qualities;
    }
    result.qualities = std::move(qualities);
    result.reputations = std::move(reputations);
    return result;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::kMean: return "mean";
        case Algorithm::kIr: return "ir";
        case Algorithm::kCr: return "cr";
        case Algorithm::kRr: return "rr";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "mean") return Algorithm::kMean;
    if (name == "ir") return Algorithm::kIr;
    if (name == "cr") return Algorithm::kCr;
    if (name == "rr") return Algorithm::kRr;
    return std::nullopt;
}

void RankingConfig::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
}

double residual(std::span<const double> q_new, std::span<const double> q_old) {
    if (q_new.size() != q_old.size()) {
        throw std::invalid_argument("residual: length mismatch (" + std::to_string(q_new.size()) + " vs " +
                                    std::to_string(q_old.size()) + ")");
    }
    if (q_new.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t l = 0; l < q_new.size(); ++l) {
        if (is_unrated(q_new[l]) && is_unrated(q_old[l])) continue;
        const double d = q_new[l] - q_old[l];
        sum += d * d;
    }
    return sum / static_cast<double>(q_new.size());
}

RankingResult rank_mean(const RatingGraph& g) {
    RankingResult result;
    result.reputations.assign(g.num_users(), 1.0);
    result.qualities.resize(g.num_items());
    for (Index a = 0; a < g.num_items(); ++a) {
        const auto raters = g.item_ratings(a);
        if (raters.empty()) {
            result.qualities[a] = kUnrated;
            continue;
        }
        double sum = 0.0;
        for (const auto& nb : raters) sum += nb.rating;
        result.qualities[a] = sum / static_cast<double>(raters.size());
    }
    result.iterations_used = 1;
    result.converged = true;
    result.final_residual = 0.0;
    return result;
}

RankingResult rank_ir(const RatingGraph& g, const RankingConfig& cfg) {
    const auto step = [&](std::span<const double> qualities, std::vector<double>& reputations) {
        for (Index u = 0; u < g.num_users(); ++u) {
            const auto rated = g.user_ratings(u);
            if (rated.empty()) {
                reputations[u] = 0.0;
                continue;
            }
            double sq = 0.0;
            for (const auto& [a, r] : rated) sq += (r - qualities[a]) * (r - qualities[a]);
            reputations[u] = std::pow(sq / static_cast<double>(rated.size()) + cfg.epsilon, -cfg.beta);
        }
    };
    return iterate(g, cfg, std::vector<double>(g.num_users(), 1.0), false, step);
}

RankingResult rank_cr(const RatingGraph& g, const RankingConfig& cfg) {
    const auto step = [&](std::span<const double> qualities, std::vector<double>& reputations) {
        temporal_reputation(g, qualities, {}, reputations);
    };
    return iterate(g, cfg, degree_share(g), false, step);
}

RankingResult rank_rr(const RatingGraph& g, const RankingConfig& cfg) {
    const auto damping = cfg.degree_damping ? degree_damping(g) : std::vector<double>{};
    std::vector<double> temporal(g.num_users());
    const auto step = [&](std::span<const double> qualities, std::vector<double>& reputations) {
        temporal_reputation(g, qualities, damping, temporal);
        redistribute(temporal, cfg.theta, reputations);
    };
    return iterate(g, cfg, degree_share(g), cfg.penalty_factor, step);
}

RankingResult rank(const RatingGraph& g, const RankingConfig& cfg) {
    switch (cfg.algorithm) {
        case Algorithm::kMean: return rank_mean(g);
        case Algorithm::kIr: return rank_ir(g, cfg);
        case Algorithm::kCr: return rank_cr(g, cfg);
        case Algorithm::kRr: return rank_rr(g, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace reprank
