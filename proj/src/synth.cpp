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

#include "reprank/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace reprank {

namespace {

// Occupancy of (user, item) pairs: a bitmap while it stays small, a hash set
// for very large grids.
class PairSet {
public:
    PairSet(std::size_t users, std::size_t items, std::size_t expected) : items_(items) {
        if (users * items <= (std::size_t{1} << 28)) {
            bits_.assign(users * items, false);
        } else {
            set_.reserve(expected);
        }
    }

    bool insert(Index u, Index a) {
        if (!bits_.empty()) {
            auto ref = bits_[std::size_t{u} * items_ + a];
            if (ref) return false;
            ref = true;
            return true;
        }
        return set_.insert((static_cast<std::uint64_t>(u) << 32) | a).second;
    }

private:
    std::size_t items_;
    std::vector<bool> bits_;
    std::unordered_set<std::uint64_t> set_;
};

// Draws a node with probability (k + 1) / (sum k + n): either a uniform node
// or a uniform entry of the endpoint list, where each node occurs k times.
Index draw_preferential(std::size_t n, const std::vector<Index>& endpoints, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, n + endpoints.size() - 1);
    const auto x = pick(rng);
    return x < n ? static_cast<Index>(x) : endpoints[x - n];
}

std::string truth_error(std::size_t offset, const std::string& what) {
    return "truth file, byte offset " + std::to_string(offset) + ": " + what;
}

}  // namespace

DiscretizationCase discretization_case(int id) {
    if (id < 0 || id > 4) throw std::invalid_argument("discretization case must be 0..4, got " + std::to_string(id));
    return static_cast<DiscretizationCase>(id);
}

void SynthSpec::validate() const {
    if (num_users == 0 || num_items == 0) throw std::invalid_argument("synthetic network needs users and items");
    if (num_users > std::numeric_limits<Index>::max() || num_items > std::numeric_limits<Index>::max()) {
        throw std::invalid_argument("synthetic network dimensions exceed index range");
    }
    if (num_links > num_users * num_items) {
        throw std::invalid_argument("num_links exceeds num_users * num_items");
    }
    if (!(q_min >= kMinRating && q_max <= kMaxRating && q_min < q_max)) {
        throw std::invalid_argument("intrinsic quality bounds must satisfy 1 <= q_min < q_max <= 5");
    }
    if (!(delta_min >= 0.0 && delta_min < delta_max)) {
        throw std::invalid_argument("error magnitude bounds must satisfy 0 <= delta_min < delta_max");
    }
    if (!(spam_fraction >= 0.0 && spam_fraction <= 1.0)) throw std::invalid_argument("spam fraction must lie in [0,1]");
    discretization_case(static_cast<int>(discretization));
}

std::vector<Edge> generate_topology(const SynthSpec& spec, Rng& rng) {
    spec.validate();
    std::vector<Edge> edges;
    edges.reserve(spec.num_links);
    std::vector<Index> user_ends;
    std::vector<Index> item_ends;
    user_ends.reserve(spec.num_links);
    item_ends.reserve(spec.num_links);
    PairSet taken(spec.num_users, spec.num_items, spec.num_links);
    while (edges.size() < spec.num_links) {
        const Index u = draw_preferential(spec.num_users, user_ends, rng);
        const Index a = draw_preferential(spec.num_items, item_ends, rng);
        if (!taken.insert(u, a)) continue;
        edges.push_back({u, a});
        user_ends.push_back(u);
        item_ends.push_back(a);
    }
    return edges;
}

SynthTruth draw_truth(const SynthSpec& spec, Rng& rng) {
    spec.validate();
    SynthTruth truth;
    std::uniform_real_distribution<double> quality(spec.q_min, spec.q_max);
    std::uniform_real_distribution<double> magnitude(spec.delta_min, spec.delta_max);
    truth.intrinsic_quality.resize(spec.num_items);
    for (auto& q : truth.intrinsic_quality) q = quality(rng);
    truth.error_magnitude.resize(spec.num_users);
    for (auto& e : truth.error_magnitude) e = magnitude(rng);
    return truth;
}

int discretize(double raw, DiscretizationCase which, Rng& rng) {
    struct Band {
        double lo, hi;
        int low_rating;
    };
    static constexpr Band kBands[] = {{0, 0, 0}, {0.0, 2.5, 1}, {1.5, 3.5, 2}, {2.5, 4.5, 3}, {3.5, 5.0, 4}};
    // Out-of-range raw values are truncated before any band test, so
    // raw > 5 joins the 4/5 band in case 4.
    raw = std::clamp(raw, kMinRating, kMaxRating);
    if (which != DiscretizationCase::kNearest) {
        const auto& band = kBands[static_cast<int>(which)];
        if (raw >= band.lo && raw <= band.hi) {
            std::bernoulli_distribution coin(0.5);
            return band.low_rating + (coin(rng) ? 1 : 0);
        }
    }
    // std::round breaks x.5 ties away from zero.
    return static_cast<int>(std::round(raw));
}

RatingGraph rate_edges(std::span<const Edge> edges, const SynthTruth& truth, DiscretizationCase which, Rng& rng) {
    const auto users = truth.error_magnitude.size();
    const auto items = truth.intrinsic_quality.size();
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<Link> links;
    links.reserve(edges.size());
    for (const auto& [u, a] : edges) {
        if (u >= users || a >= items) throw std::invalid_argument("edge outside truth dimensions");
        const double raw = truth.intrinsic_quality[a] + truth.error_magnitude[u] * noise(rng);
        links.push_back({u, a, static_cast<double>(discretize(raw, which, rng))});
    }
    return RatingGraph(users, items, std::move(links));
}

SynthNetwork generate_ratings(std::span<const Edge> edges, const SynthSpec& spec, Rng& rng) {
    auto truth = draw_truth(spec, rng);
    auto graph = rate_edges(edges, truth, spec.discretization, rng);
    return {std::move(graph), std::move(truth)};
}

RatingGraph inject_spam(const RatingGraph& g, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spam fraction must lie in [0,1]");
    const auto total = g.num_links();
    const auto count = std::min<std::size_t>(
        total, static_cast<std::size_t>(std::floor(p * static_cast<double>(total) + 1e-9)));
    std::vector<double> ratings;
    ratings.reserve(total);
    for (const auto& l : g.links()) ratings.push_back(l.rating);
    if (count == 0) return g.with_ratings(ratings);

    // Partial Fisher-Yates: the first `count` slots are a uniform sample.
    std::vector<std::size_t> slots(total);
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    std::uniform_int_distribution<int> star(1, 5);
    for (std::size_t k = 0; k < count; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, total - 1);
        std::swap(slots[k], slots[pick(rng)]);
        ratings[slots[k]] = static_cast<double>(star(rng));
    }
    return g.with_ratings(ratings);
}

SynthNetwork synthesize(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const auto edges = generate_topology(spec, rng);
    auto net = generate_ratings(edges, spec, rng);
    if (spec.spam_fraction > 0.0) net.graph = inject_spam(net.graph, spec.spam_fraction, rng);
    return net;
}

void write_truth(const SynthTruth& truth, std::ostream& out) {
    out << "reprank-truth 1 " << truth.intrinsic_quality.size() << ' ' << truth.error_magnitude.size() << '\n';
    char buf[64];
    const auto emit = [&](char tag, std::size_t index, double value) {
        const auto res = std::to_chars(buf, buf + sizeof buf, value);
        out << tag << ' ' << index << ' ' << std::string_view(buf, res.ptr - buf) << '\n';
    };
    for (std::size_t a = 0; a < truth.intrinsic_quality.size(); ++a) emit('q', a, truth.intrinsic_quality[a]);
    for (std::size_t u = 0; u < truth.error_magnitude.size(); ++u) emit('e', u, truth.error_magnitude[u]);
}

SynthTruth read_truth(std::istream& in) {
    std::string line;
    std::size_t offset = 0;
    std::size_t line_start = 0;
    const auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            line_start = offset;
            offset += line.size() + 1;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line.front() == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError(truth_error(offset, "empty truth"), 0);
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    std::size_t items = 0;
    std::size_t users = 0;
    if (!(header >> magic >> version >> items >> users) || magic != "reprank-truth" || version != 1) {
        throw ParseError(truth_error(line_start, "bad header"), 0);
    }
    if (items == 0 || users == 0) throw ParseError(truth_error(line_start, "empty truth"), 0);

    SynthTruth truth;
    truth.intrinsic_quality.reserve(items);
    truth.error_magnitude.reserve(users);
    const auto read_block = [&](char tag, std::size_t count, std::vector<double>& values) {
        for (std::size_t k = 0; k < count; ++k) {
            if (!next_line()) {
                throw ParseError(truth_error(offset, "truncated: expected " + std::to_string(count) + " '" + tag +
                                                         "' entries, found " + std::to_string(k)),
                                 0);
            }
            std::istringstream fields(line);
            char got = 0;
            std::size_t index = 0;
            std::string value_text;
            std::string extra;
            if (!(fields >> got >> index >> value_text) || (fields >> extra) || got != tag || index != k) {
                throw ParseError(truth_error(line_start, "malformed entry '" + line + "'"), 0);
            }
            double value = 0.0;
            const auto* end = value_text.data() + value_text.size();
            const auto [ptr, ec] = std::from_chars(value_text.data(), end, value);
            if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
                throw ParseError(truth_error(line_start, "bad number '" + value_text + "'"), 0);
            }
            values.push_back(value);
        }
    };
    read_block('q', items, truth.intrinsic_quality);
    read_block('e', users, truth.error_magnitude);
    if (next_line()) throw ParseError(truth_error(line_start, "trailing data"), 0);
    return truth;
}

SynthTruth read_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_truth(in);
}

SynthTruth align_truth(const SynthTruth& truth, const RatingGraph& g) {
    const auto lookup = [](const std::string& id, const std::vector<double>& values) {
        std::size_t index = 0;
        const auto* end = id.data() + id.size();
        const auto [ptr, ec] = std::from_chars(id.data(), end, index);
        if (ec != std::errc{} || ptr != end || index >= values.size()) return std::numeric_limits<double>::quiet_NaN();
        return values[index];
    };
    SynthTruth aligned;
    aligned.intrinsic_quality.resize(g.num_items());
    aligned.error_magnitude.resize(g.num_users());
    for (Index a = 0; a < g.num_items(); ++a) aligned.intrinsic_quality[a] = lookup(g.item_id(a), truth.intrinsic_quality);
    for (Index u = 0; u < g.num_users(); ++u) aligned.error_magnitude[u] = lookup(g.user_id(u), truth.error_magnitude);
    return aligned;
}

}  // namespace reprank
