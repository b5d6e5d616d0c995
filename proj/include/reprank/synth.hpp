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

#ifndef REPRANK_SYNTH_HPP
#define REPRANK_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "reprank/graph.hpp"

namespace reprank {

using Rng = std::mt19937_64;

/// How raw continuous ratings become integers. kNearest rounds to the nearest
/// integer and truncates to [1,5]; the confused cases replace raw values in
/// one band by a fair coin between the band's two integers.
enum class DiscretizationCase : int {
    kNearest = 0,
    kConfused12 = 1,  // raw in [0, 2.5]   -> 1 or 2
    kConfused23 = 2,  // raw in [1.5, 3.5] -> 2 or 3
    kConfused34 = 3,  // raw in [2.5, 4.5] -> 3 or 4
    kConfused45 = 4,  // raw in [3.5, 5]   -> 4 or 5
};

DiscretizationCase discretization_case(int id);

struct SynthSpec {
    std::size_t num_users = 6000;
    std::size_t num_items = 4000;
    std::size_t num_links = 480000;
    double q_min = 1.0;
    double q_max = 5.0;
    double delta_min = 0.0;
    double delta_max = 4.0;
    DiscretizationCase discretization = DiscretizationCase::kNearest;
    double spam_fraction = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Hidden ground truth of a synthetic network.
struct SynthTruth {
    std::vector<double> intrinsic_quality;  // Q'_a per item
    std::vector<double> error_magnitude;    // e_i per user, the noise standard deviation

    friend bool operator==(const SynthTruth&, const SynthTruth&) = default;
};

struct Edge {
    Index user;
    Index item;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Degree-proportional growth: each new link picks a user with probability
/// proportional to k_i + 1 and, independently, an item with probability
/// proportional to k_a + 1. A pair that already exists is redrawn as a whole.
std::vector<Edge> generate_topology(const SynthSpec& spec, Rng& rng);

/// Q'_a ~ U[q_min, q_max], then e_i ~ U[delta_min, delta_max).
SynthTruth draw_truth(const SynthSpec& spec, Rng& rng);

/// Integer rating in {1..5} for a raw value q = Q'_a + noise. The raw value is
/// truncated to [1, 5] first; values inside the case band then take either
/// band rating with probability 1/2, the rest round to the nearest integer.
int discretize(double raw, DiscretizationCase which, Rng& rng);

/// Rates each edge in order: raw = Q'_a + N(0, e_i), then discretize.
RatingGraph rate_edges(std::span<const Edge> edges, const SynthTruth& truth, DiscretizationCase which, Rng& rng);

struct SynthNetwork {
    RatingGraph graph;
    SynthTruth truth;
};

/// draw_truth followed by rate_edges.
SynthNetwork generate_ratings(std::span<const Edge> edges, const SynthSpec& spec, Rng& rng);

/// Replaces floor(p * |links|) ratings, chosen uniformly without replacement,
/// with uniform integers in {1..5}. Topology is untouched.
RatingGraph inject_spam(const RatingGraph& g, double p, Rng& rng);

/// Full pipeline from spec.seed: topology, truth, ratings, spam.
SynthNetwork synthesize(const SynthSpec& spec);

/// Text format, one value per line at full precision:
///   reprank-truth 1 <items> <users>
///   q <item_id> <Q'>      (items lines)
///   e <user_id> <e_i>     (users lines)
/// Ids are the decimal indices used by synthetic graphs.
void write_truth(const SynthTruth& truth, std::ostream& out);
SynthTruth read_truth(std::istream& in);
SynthTruth read_truth_file(const std::string& path);

/// Reorders a truth indexed by synthetic index into the index space of `g`,
/// resolving through g's decimal ids. Entries g has no truth for become NaN.
SynthTruth align_truth(const SynthTruth& truth, const RatingGraph& g);

}  // namespace reprank

#endif  // REPRANK_SYNTH_HPP
