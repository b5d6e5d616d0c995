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

#ifndef REPRANK_GRAPH_HPP
#define REPRANK_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reprank {

using Index = std::uint32_t;

inline constexpr double kMinRating = 1.0;
inline constexpr double kMaxRating = 5.0;

/// Input text could not be parsed. Carries the 1-based line number (0 when
/// the problem is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A file could not be opened or read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input was well-formed but violates a data invariant (duplicate pair,
/// empty benchmark, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Link {
    Index user;
    Index item;
    double rating;

    friend bool operator==(const Link&, const Link&) = default;
};

struct Neighbor {
    Index index;
    double rating;
};

/**
 * Immutable sparse bipartite user-item network with real-valued ratings.
 *
 * Links keep their construction order. Adjacency is stored twice in CSR
 * form (per user and per item) with the rating copied alongside, so both
 * half-steps of an iterative ranking stream through contiguous memory.
 * External ids are shared between graphs derived through with_ratings().
 */
class RatingGraph {
public:
    RatingGraph();

    /// Validates indices, rating bounds and pair uniqueness. Empty id
    /// vectors mean "use the decimal index as id".
    RatingGraph(std::size_t num_users, std::size_t num_items, std::vector<Link> links,
                std::vector<std::string> user_ids = {}, std::vector<std::string> item_ids = {});

    std::size_t num_users() const noexcept { return num_users_; }
    std::size_t num_items() const noexcept { return num_items_; }
    std::size_t num_links() const noexcept { return links_.size(); }

    std::span<const Link> links() const noexcept { return links_; }

    /// O_i: items rated by user `u`, ascending by item index.
    std::span<const Neighbor> user_ratings(Index u) const noexcept {
        return {user_adj_.data() + user_offsets_[u], user_adj_.data() + user_offsets_[u + 1]};
    }
    /// U_a: users who rated item `a`, ascending by user index.
    std::span<const Neighbor> item_ratings(Index a) const noexcept {
        return {item_adj_.data() + item_offsets_[a], item_adj_.data() + item_offsets_[a + 1]};
    }
    std::size_t user_degree(Index u) const noexcept { return user_offsets_[u + 1] - user_offsets_[u]; }
    std::size_t item_degree(Index a) const noexcept { return item_offsets_[a + 1] - item_offsets_[a]; }

    const std::string& user_id(Index u) const { return labels_->user_ids[u]; }
    const std::string& item_id(Index a) const { return labels_->item_ids[a]; }
    std::optional<Index> find_user(std::string_view id) const;
    std::optional<Index> find_item(std::string_view id) const;

    /// Same topology and ids, new ratings given in link order.
    RatingGraph with_ratings(std::span<const double> ratings) const;

    /// Equal topology, ratings (bit-equal) and ids.
    friend bool operator==(const RatingGraph& a, const RatingGraph& b);

private:
    struct Labels {
        std::vector<std::string> user_ids;
        std::vector<std::string> item_ids;
        std::unordered_map<std::string, Index> user_lookup;
        std::unordered_map<std::string, Index> item_lookup;
    };

    void build_adjacency();
    void refresh_ratings();

    std::size_t num_users_ = 0;
    std::size_t num_items_ = 0;
    std::vector<Link> links_;
    std::vector<std::size_t> user_offsets_;
    std::vector<Neighbor> user_adj_;
    std::vector<std::size_t> item_offsets_;
    std::vector<Neighbor> item_adj_;
    // Link index behind each adjacency slot, so reweighting skips the sort.
    std::vector<std::uint32_t> user_adj_link_;
    std::vector<std::uint32_t> item_adj_link_;
    std::shared_ptr<const Labels> labels_;
};

enum class RatingFormat {
    kGenericCsv,  // user_id,item_id,rating with optional header
    kMovieLens,   // UserID::MovieID::Rating::Timestamp
};

std::optional<RatingFormat> parse_rating_format(std::string_view name);

/// Reads rating records. Blank lines and lines starting with '#' are skipped.
/// External ids are mapped to dense indices in first-seen order.
RatingGraph ingest_ratings(std::istream& in, RatingFormat format);
RatingGraph ingest_ratings_file(const std::string& path, RatingFormat format);

/// Generic CSV with a `user_id,item_id,rating` header, links in graph order,
/// ratings in shortest round-trip decimal form.
void write_ratings_csv(const RatingGraph& g, std::ostream& out);

/// Set of known-good items E used by the ranking score.
class BenchmarkSet {
public:
    /// Sorts and validates: non-empty, unique, every index < num_items.
    BenchmarkSet(std::vector<Index> items, std::size_t num_items);

    std::span<const Index> items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }

    /// Ids from the source that did not resolve to an item of the graph.
    std::size_t skipped() const noexcept { return skipped_; }
    void set_skipped(std::size_t n) noexcept { skipped_ = n; }

private:
    std::vector<Index> items_;
    std::size_t skipped_ = 0;
};

/// One external item id per line; '#' comments and blank lines ignored.
/// Unknown ids are counted in skipped(); repeated ids collapse.
BenchmarkSet load_benchmark(std::istream& in, const RatingGraph& g);
BenchmarkSet load_benchmark_file(const std::string& path, const RatingGraph& g);

struct GraphStats {
    std::size_t num_users;
    std::size_t num_items;
    std::size_t num_links;
    double mean_user_degree;
    double mean_item_degree;
    double sparsity;
};

GraphStats graph_stats(const RatingGraph& g);

}  // namespace reprank

#endif  // REPRANK_GRAPH_HPP
