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

#ifndef REPRANK_SWEEP_HPP
#define REPRANK_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reprank/graph.hpp"
#include "reprank/ranking.hpp"
#include "reprank/synth.hpp"

namespace reprank {

enum class Metric {
    kRankingScore,  // RS over the benchmark, minimized
    kCorrelation,   // Pearson(R_i, e_i); good rankings push it towards -1
};

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

struct GridSpec {
    std::vector<double> p1_values;
    std::vector<double> p2_values;

    /// {0, step, 2 step, ..., 1} on both axes. `step` must divide 1.
    static GridSpec uniform(double step);
    /// One axis swept with `step`, the other pinned.
    static GridSpec p1_slice(double step, double fixed_p2);
    static GridSpec p2_slice(double step, double fixed_p1);

    /// Sorts, checks every value lies in [0,1] and rejects empty axes.
    void normalize();
};

/// A fixed rating network plus its benchmark; ranking is deterministic so a
/// single realization suffices.
struct RealSource {
    std::shared_ptr<const RatingGraph> graph;
    std::shared_ptr<const BenchmarkSet> benchmark;
};

/// Fresh synthetic network per realization. spec.seed is ignored; each
/// realization is seeded from the sweep's master seed.
struct SynthSource {
    SynthSpec spec;
    double benchmark_fraction = 0.05;  // top share of Q' used as E for RS
};

struct SweepSpec {
    std::variant<RealSource, SynthSource> source;
    RankingConfig ranking;
    Metric metric = Metric::kRankingScore;
    GridSpec grid = GridSpec::uniform(0.05);
    std::size_t realizations = 10;
    std::uint64_t master_seed = 0;
    std::size_t threads = 1;
    std::string tag;  // dataset name or synthetic case, carried into tables
};

struct CellSample {
    double value;
    bool converged;
};

struct SweepCell {
    double p1;
    double p2;
    double mean;
    double std;  // sample standard deviation over realizations, 0 for n = 1
    std::size_t n;
    double converged_fraction;
    std::vector<CellSample> samples;  // one per realization, in realization order
};

class SweepGrid {
public:
    SweepGrid(GridSpec grid, Metric metric, Algorithm algorithm, std::string tag, std::vector<SweepCell> cells);

    std::span<const double> p1_values() const noexcept { return grid_.p1_values; }
    std::span<const double> p2_values() const noexcept { return grid_.p2_values; }
    Metric metric() const noexcept { return metric_; }
    Algorithm algorithm() const noexcept { return algorithm_; }
    const std::string& tag() const noexcept { return tag_; }

    /// Cells ordered by p2, then p1.
    std::span<const SweepCell> cells() const noexcept { return cells_; }
    const SweepCell& at(std::size_t p1_index, std::size_t p2_index) const;
    /// Exact lookup of a grid point; nullptr when absent.
    const SweepCell* find(double p1, double p2) const;

private:
    GridSpec grid_;
    Metric metric_;
    Algorithm algorithm_;
    std::string tag_;
    std::vector<SweepCell> cells_;
};

/// Seed of realization `r`, shared by every cell of a sweep.
std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t realization);

/// Every (p1, p2) cell of every realization: project, rank, evaluate. The
/// network of a realization is generated once and reused by all cells.
SweepGrid run_sweep(const SweepSpec& spec);

/// One cell of one realization computed in isolation. Matches the
/// corresponding entry of run_sweep exactly.
CellSample evaluate_cell(const SweepSpec& spec, double p1, double p2, std::size_t realization);

struct Optimum {
    double p1;
    double p2;
    double value;
};

/// Cell with the smallest mean. For correlation that is the strongest
/// anticorrelation between reputation and error. Ties go to the
/// smallest p2, then the smallest p1. Cells that never converged keep their
/// recorded value; a grid with no converged cell at all is an error.
Optimum find_optimum(const SweepGrid& grid);

struct ComparisonRow {
    std::string tag;
    Algorithm algorithm;
    double original;   // RS at (0.5, 0.5)
    double projected;  // RS at the grid optimum
    Optimum optimum;
};

/// Requires an RS grid that contains (0.5, 0.5).
ComparisonRow compare_entry(const SweepGrid& grid);
std::vector<ComparisonRow> compare_table(std::span<const SweepGrid> grids);

/// Long form `p1,p2,mean,std,n,converged_frac`.
void write_sweep_csv(const SweepGrid& grid, std::ostream& out);
/// `tag,algorithm,original,projected,p1,p2`.
void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out);

}  // namespace reprank

#endif  // REPRANK_SWEEP_HPP
