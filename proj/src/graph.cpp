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

#include "reprank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

namespace reprank {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

// Splits on `delim`; returns at most `max_fields + 1` pieces so callers can
// detect surplus columns.
std::vector<std::string_view> split(std::string_view line, std::string_view delim, std::size_t max_fields) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (out.size() < max_fields) {
        const auto next = line.find(delim, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + delim.size();
    }
    out.push_back(line.substr(pos));
    return out;
}

std::string line_msg(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

std::vector<std::string> decimal_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return ids;
}

std::uint64_t pair_key(Index u, Index a) { return (static_cast<std::uint64_t>(u) << 32) | a; }

bool rating_in_bounds(double r) { return r >= kMinRating && r <= kMaxRating; }

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? line_msg(line, what) : what), line_(line) {}

RatingGraph::RatingGraph()
    : user_offsets_(1, 0), item_offsets_(1, 0), labels_(std::make_shared<Labels>()) {}

RatingGraph::RatingGraph(std::size_t num_users, std::size_t num_items, std::vector<Link> links,
                         std::vector<std::string> user_ids, std::vector<std::string> item_ids)
    : num_users_(num_users), num_items_(num_items), links_(std::move(links)) {
    if (num_users > std::numeric_limits<Index>::max() || num_items > std::numeric_limits<Index>::max()) {
        throw std::invalid_argument("graph dimensions exceed index range");
    }
    if (user_ids.empty()) user_ids = decimal_ids(num_users);
    if (item_ids.empty()) item_ids = decimal_ids(num_items);
    if (user_ids.size() != num_users || item_ids.size() != num_items) {
        throw std::invalid_argument("id vector size does not match graph dimensions");
    }

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(links_.size());
    for (const auto& l : links_) {
        if (l.user >= num_users || l.item >= num_items) {
            throw std::invalid_argument("link index out of range");
        }
        if (!rating_in_bounds(l.rating)) {
            throw DataError("rating out of bounds: " + std::to_string(l.rating));
        }
        if (!seen.insert(pair_key(l.user, l.item)).second) {
            throw DataError("duplicate (user,item) pair");
        }
    }

    auto labels = std::make_shared<Labels>();
    labels->user_ids = std::move(user_ids);
    labels->item_ids = std::move(item_ids);
    labels->user_lookup.reserve(num_users);
    for (Index u = 0; u < num_users; ++u) {
        if (!labels->user_lookup.emplace(labels->user_ids[u], u).second) {
            throw std::invalid_argument("duplicate user id: " + labels->user_ids[u]);
        }
    }
    labels->item_lookup.reserve(num_items);
    for (Index a = 0; a < num_items; ++a) {
        if (!labels->item_lookup.emplace(labels->item_ids[a], a).second) {
            throw std::invalid_argument("duplicate item id: " + labels->item_ids[a]);
        }
    }
    labels_ = std::move(labels);
    build_adjacency();
}

void RatingGraph::build_adjacency() {
    if (links_.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("too many links");
    }
    user_offsets_.assign(num_users_ + 1, 0);
    item_offsets_.assign(num_items_ + 1, 0);
    for (const auto& l : links_) {
        ++user_offsets_[l.user + 1];
        ++item_offsets_[l.item + 1];
    }
    for (std::size_t u = 0; u < num_users_; ++u) user_offsets_[u + 1] += user_offsets_[u];
    for (std::size_t a = 0; a < num_items_; ++a) item_offsets_[a + 1] += item_offsets_[a];

    // Slot order inside a row: ascending neighbor index.
    const auto fill = [&](const std::vector<std::size_t>& offsets, std::vector<std::uint32_t>& slots, bool by_user) {
        slots.resize(links_.size());
        std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::uint32_t k = 0; k < links_.size(); ++k) {
            slots[cursor[by_user ? links_[k].user : links_[k].item]++] = k;
        }
        const auto other = [&](std::uint32_t k) { return by_user ? links_[k].item : links_[k].user; };
        for (std::size_t row = 0; row + 1 < offsets.size(); ++row) {
            std::sort(slots.begin() + static_cast<std::ptrdiff_t>(offsets[row]),
                      slots.begin() + static_cast<std::ptrdiff_t>(offsets[row + 1]),
                      [&](std::uint32_t x, std::uint32_t y) { return other(x) < other(y); });
        }
    };
    fill(user_offsets_, user_adj_link_, true);
    fill(item_offsets_, item_adj_link_, false);
    refresh_ratings();
}

void RatingGraph::refresh_ratings() {
    user_adj_.resize(links_.size());
    item_adj_.resize(links_.size());
    for (std::size_t s = 0; s < links_.size(); ++s) {
        const auto& l = links_[user_adj_link_[s]];
        user_adj_[s] = {l.item, l.rating};
    }
    for (std::size_t s = 0; s < links_.size(); ++s) {
        const auto& l = links_[item_adj_link_[s]];
        item_adj_[s] = {l.user, l.rating};
    }
}

std::optional<Index> RatingGraph::find_user(std::string_view id) const {
    const auto it = labels_->user_lookup.find(std::string(id));
    if (it == labels_->user_lookup.end()) return std::nullopt;
    return it->second;
}

std::optional<Index> RatingGraph::find_item(std::string_view id) const {
    const auto it = labels_->item_lookup.find(std::string(id));
    if (it == labels_->item_lookup.end()) return std::nullopt;
    return it->second;
}

RatingGraph RatingGraph::with_ratings(std::span<const double> ratings) const {
    if (ratings.size() != links_.size()) {
        throw std::invalid_argument("rating vector length does not match link count");
    }
    RatingGraph g(*this);
    for (std::size_t k = 0; k < ratings.size(); ++k) {
        if (!rating_in_bounds(ratings[k])) {
            throw DataError("rating out of bounds: " + std::to_string(ratings[k]));
        }
        g.links_[k].rating = ratings[k];
    }
    g.refresh_ratings();
    return g;
}

bool operator==(const RatingGraph& a, const RatingGraph& b) {
    if (a.num_users_ != b.num_users_ || a.num_items_ != b.num_items_ || a.links_ != b.links_) return false;
    if (a.labels_ == b.labels_) return true;
    return a.labels_->user_ids == b.labels_->user_ids && a.labels_->item_ids == b.labels_->item_ids;
}

std::optional<RatingFormat> parse_rating_format(std::string_view name) {
    if (name == "csv" || name == "generic-csv") return RatingFormat::kGenericCsv;
    if (name == "movielens" || name == "movielens-double-colon") return RatingFormat::kMovieLens;
    return std::nullopt;
}

RatingGraph ingest_ratings(std::istream& in, RatingFormat format) {
    std::unordered_map<std::string, Index> user_index;
    std::unordered_map<std::string, Index> item_index;
    std::vector<std::string> user_ids;
    std::vector<std::string> item_ids;
    std::vector<Link> links;
    std::unordered_set<std::uint64_t> seen;

    const auto intern = [](std::string_view id, std::unordered_map<std::string, Index>& index,
                           std::vector<std::string>& ids) {
        auto [it, inserted] = index.try_emplace(std::string(id), static_cast<Index>(ids.size()));
        if (inserted) ids.push_back(it->first);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    bool first_record = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;

        std::vector<std::string_view> fields;
        if (format == RatingFormat::kGenericCsv) {
            fields = split(line, ",", 3);
            if (fields.size() != 3) throw ParseError("malformed record: expected 3 columns", line_no);
        } else {
            fields = split(line, "::", 4);
            if (fields.size() < 3 || fields.size() > 4) {
                throw ParseError("malformed record: expected UserID::MovieID::Rating::Timestamp", line_no);
            }
        }
        const auto user = trim(fields[0]);
        const auto item = trim(fields[1]);
        const auto rating = parse_double(trim(fields[2]));

        if (!rating) {
            // A header is only legal as the first record of a CSV file.
            if (first_record && format == RatingFormat::kGenericCsv) {
                first_record = false;
                continue;
            }
            throw ParseError("malformed record: rating is not a number", line_no);
        }
        first_record = false;
        if (user.empty() || item.empty()) throw ParseError("malformed record: empty id", line_no);
        if (!rating_in_bounds(*rating)) throw ParseError("rating out of bounds", line_no);

        const Index u = intern(user, user_index, user_ids);
        const Index a = intern(item, item_index, item_ids);
        if (!seen.insert(pair_key(u, a)).second) {
            throw ParseError("duplicate (user,item) pair", line_no);
        }
        links.push_back({u, a, *rating});
    }
    if (in.bad()) throw ParseError("read error", line_no);

    const auto nu = user_ids.size();
    const auto ni = item_ids.size();
    return RatingGraph(nu, ni, std::move(links), std::move(user_ids), std::move(item_ids));
}

RatingGraph ingest_ratings_file(const std::string& path, RatingFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return ingest_ratings(in, format);
}

void write_ratings_csv(const RatingGraph& g, std::ostream& out) {
    out << "user_id,item_id,rating\n";
    char buf[64];
    for (const auto& l : g.links()) {
        const auto res = std::to_chars(buf, buf + sizeof buf, l.rating);
        out << g.user_id(l.user) << ',' << g.item_id(l.item) << ',' << std::string_view(buf, res.ptr - buf) << '\n';
    }
}

BenchmarkSet::BenchmarkSet(std::vector<Index> items, std::size_t num_items) : items_(std::move(items)) {
    if (items_.empty()) throw DataError("empty benchmark set");
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
        throw std::invalid_argument("duplicate benchmark item");
    }
    if (items_.back() >= num_items) throw std::invalid_argument("benchmark item index out of range");
}

BenchmarkSet load_benchmark(std::istream& in, const RatingGraph& g) {
    std::vector<Index> items;
    std::unordered_set<Index> seen;
    std::size_t skipped = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (is_skippable(line)) continue;
        const auto item = g.find_item(trim(line));
        if (!item) {
            ++skipped;
            continue;
        }
        if (seen.insert(*item).second) items.push_back(*item);
    }
    BenchmarkSet set(std::move(items), g.num_items());
    set.set_skipped(skipped);
    return set;
}

BenchmarkSet load_benchmark_file(const std::string& path, const RatingGraph& g) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return load_benchmark(in, g);
}

GraphStats graph_stats(const RatingGraph& g) {
    GraphStats s{g.num_users(), g.num_items(), g.num_links(), 0.0, 0.0, 0.0};
    const auto links = static_cast<double>(g.num_links());
    if (s.num_users) s.mean_user_degree = links / static_cast<double>(s.num_users);
    if (s.num_items) s.mean_item_degree = links / static_cast<double>(s.num_items);
    if (s.num_users && s.num_items) {
        s.sparsity = links / (static_cast<double>(s.num_users) * static_cast<double>(s.num_items));
    }
    return s;
}

}  // namespace reprank
