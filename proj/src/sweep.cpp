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

#include "reprank/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "reprank/metrics.hpp"
#include "reprank/projection.hpp"

namespace reprank {

namespace {

struct Realization {
    std::shared_ptr<const RatingGraph> graph;
    std::shared_ptr<const BenchmarkSet> benchmark;
    std::vector<double> errors;  // e_i, correlation metric only
};

void check_spec(const SweepSpec& spec) {
    spec.ranking.validate();
    if (spec.realizations < 1) throw std::invalid_argument("need at least one realization");
    if (const auto* real = std::get_if<RealSource>(&spec.source)) {
        if (!real->graph) throw std::invalid_argument("real-data sweep without a graph");
        if (spec.realizations != 1) throw std::invalid_argument("real-data sweeps are deterministic; use 1 realization");
        if (spec.metric == Metric::kCorrelation) {
            throw std::invalid_argument("correlation needs synthetic ground truth");
        }
        if (!real->benchmark) throw std::invalid_argument("real-data RS sweep without a benchmark");
    } else {
        const auto& synth = std::get<SynthSource>(spec.source);
        synth.spec.validate();
        if (!(synth.benchmark_fraction > 0.0 && synth.benchmark_fraction <= 1.0)) {
            throw std::invalid_argument("benchmark fraction must lie in (0,1]");
        }
    }
}

Realization prepare(const SweepSpec& spec, std::size_t r) {
    if (const auto* real = std::get_if<RealSource>(&spec.source)) return {real->graph, real->benchmark, {}};
    const auto& source = std::get<SynthSource>(spec.source);
    auto synth = source.spec;
    synth.seed = realization_seed(spec.master_seed, r);
    auto net = synthesize(synth);
    Realization out;
    if (spec.metric == Metric::kRankingScore) {
        out.benchmark = std::make_shared<const BenchmarkSet>(
            top_fraction_benchmark(net.truth.intrinsic_quality, source.benchmark_fraction));
    } else {
        out.errors = std::move(net.truth.error_magnitude);
        // Users the generator never linked are not part of the network.
        for (Index u = 0; u < net.graph.num_users(); ++u) {
            if (net.graph.user_degree(u) == 0) out.errors[u] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    out.graph = std::make_shared<const RatingGraph>(std::move(net.graph));
    return out;
}

CellSample evaluate(const SweepSpec& spec, const Realization& data, double p1, double p2) {
    const ProjectionParams params(p1, p2);
    const auto projected = project_graph(*data.graph, params);
    const auto result = rank(projected, spec.ranking);
    const double value = spec.metric == Metric::kRankingScore
                             ? ranking_score(result.qualities, *data.benchmark).value
                             : reputation_error_correlation(result.reputations, data.errors).value;
    return {value, result.converged};
}

// Runs task(0..count-1) on up to `threads` workers; rethrows the first
// failure after all workers stop.
template <class Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (threads == 1) {
        for (std::size_t k = 0; k < count; ++k) task(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t k = next++; k < count && !failed; k = next++) {
                try {
                    task(k);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    }
    workers.clear();
    if (error) std::rethrow_exception(error);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> axis(double step) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0,1]");
    const double steps = std::round(1.0 / step);
    if (std::abs(steps * step - 1.0) > 1e-9) throw std::invalid_argument("grid step must divide 1");
    const auto n = static_cast<std::size_t>(steps);
    std::vector<double> values(n + 1);
    for (std::size_t k = 0; k <= n; ++k) values[k] = static_cast<double>(k) / steps;
    return values;
}

}  // namespace

std::string_view to_string(Metric metric) {
    return metric == Metric::kRankingScore ? "rs" : "corr";
}

std::optional<Metric> parse_metric(std::string_view name) {
    if (name == "rs") return Metric::kRankingScore;
    if (name == "corr" || name == "correlation") return Metric::kCorrelation;
    return std::nullopt;
}

GridSpec GridSpec::uniform(double step) { return {axis(step), axis(step)}; }
GridSpec GridSpec::p1_slice(double step, double fixed_p2) { return {axis(step), {fixed_p2}}; }
GridSpec GridSpec::p2_slice(double step, double fixed_p1) { return {{fixed_p1}, axis(step)}; }

void GridSpec::normalize() {
    for (auto* values : {&p1_values, &p2_values}) {
        if (values->empty()) throw std::invalid_argument("grid axis is empty");
        for (const double v : *values) {
            if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("grid values must lie in [0,1]");
        }
        std::sort(values->begin(), values->end());
        values->erase(std::unique(values->begin(), values->end()), values->end());
    }
}

SweepGrid::SweepGrid(GridSpec grid, Metric metric, Algorithm algorithm, std::string tag, std::vector<SweepCell> cells)
    : grid_(std::move(grid)), metric_(metric), algorithm_(algorithm), tag_(std::move(tag)), cells_(std::move(cells)) {
    if (cells_.size() != grid_.p1_values.size() * grid_.p2_values.size()) {
        throw std::invalid_argument("cell count does not match grid");
    }
}

const SweepCell& SweepGrid::at(std::size_t p1_index, std::size_t p2_index) const {
    if (p1_index >= grid_.p1_values.size() || p2_index >= grid_.p2_values.size()) {
        throw std::out_of_range("grid index out of range");
    }
    return cells_[p2_index * grid_.p1_values.size() + p1_index];
}

const SweepCell* SweepGrid::find(double p1, double p2) const {
    const auto i1 = std::find(grid_.p1_values.begin(), grid_.p1_values.end(), p1);
    const auto i2 = std::find(grid_.p2_values.begin(), grid_.p2_values.end(), p2);
    if (i1 == grid_.p1_values.end() || i2 == grid_.p2_values.end()) return nullptr;
    return &at(static_cast<std::size_t>(i1 - grid_.p1_values.begin()),
               static_cast<std::size_t>(i2 - grid_.p2_values.begin()));
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t realization) {
    // splitmix64 finalizer over (master, index)
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(realization) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SweepGrid run_sweep(const SweepSpec& spec) {
    check_spec(spec);
    auto grid = spec.grid;
    grid.normalize();
    const auto n1 = grid.p1_values.size();
    const auto cell_count = n1 * grid.p2_values.size();

    std::vector<Realization> data(spec.realizations);
    parallel_for(spec.realizations, spec.threads, [&](std::size_t r) { data[r] = prepare(spec, r); });

    std::vector<CellSample> samples(cell_count * spec.realizations);
    parallel_for(samples.size(), spec.threads, [&](std::size_t k) {
        const auto cell = k / spec.realizations;
        const auto r = k % spec.realizations;
        samples[k] = evaluate(spec, data[r], grid.p1_values[cell % n1], grid.p2_values[cell / n1]);
    });

    std::vector<SweepCell> cells;
    cells.reserve(cell_count);
    for (std::size_t c = 0; c < cell_count; ++c) {
        SweepCell cell{grid.p1_values[c % n1], grid.p2_values[c / n1], 0.0, 0.0, spec.realizations, 0.0, {}};
        cell.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(c * spec.realizations),
                            samples.begin() + static_cast<std::ptrdiff_t>((c + 1) * spec.realizations));
        double converged = 0.0;
        for (const auto& s : cell.samples) {
            cell.mean += s.value;
            converged += s.converged ? 1.0 : 0.0;
        }
        const auto n = static_cast<double>(cell.n);
        cell.mean /= n;
        cell.converged_fraction = converged / n;
        if (cell.n > 1) {
            double ss = 0.0;
            for (const auto& s : cell.samples) ss += (s.value - cell.mean) * (s.value - cell.mean);
            cell.std = std::sqrt(ss / (n - 1.0));
        }
        cells.push_back(std::move(cell));
    }
    return SweepGrid(std::move(grid), spec.metric, spec.ranking.algorithm, spec.tag, std::move(cells));
}

CellSample evaluate_cell(const SweepSpec& spec, double p1, double p2, std::size_t realization) {
    check_spec(spec);
    if (realization >= spec.realizations) throw std::out_of_range("realization index out of range");
    return evaluate(spec, prepare(spec, realization), p1, p2);
}

Optimum find_optimum(const SweepGrid& grid) {
    const SweepCell* best = nullptr;
    bool any_converged = false;
    // cells() is ordered by p2 then p1, so keeping the first strict winner
    // implements the tie-break.
    for (const auto& cell : grid.cells()) {
        any_converged = any_converged || cell.converged_fraction > 0.0;
        if (!std::isfinite(cell.mean)) continue;
        if (!best || cell.mean < best->mean) best = &cell;
    }
    if (!any_converged) throw DataError("no cell of the grid converged");
    if (!best) throw DataError("grid holds no finite value");
    return {best->p1, best->p2, best->mean};
}

ComparisonRow compare_entry(const SweepGrid& grid) {
    if (grid.metric() != Metric::kRankingScore) throw std::invalid_argument("comparison table needs RS sweeps");
    const auto* identity = grid.find(0.5, 0.5);
    if (!identity) throw std::invalid_argument("grid does not contain (0.5, 0.5)");
    const auto opt = find_optimum(grid);
    return {grid.tag(), grid.algorithm(), identity->mean, opt.value, opt};
}

std::vector<ComparisonRow> compare_table(std::span<const SweepGrid> grids) {
    if (grids.empty()) throw std::invalid_argument("comparison table without sweeps");
    std::vector<ComparisonRow> rows;
    rows.reserve(grids.size());
    for (const auto& g : grids) rows.push_back(compare_entry(g));
    return rows;
}

void write_sweep_csv(const SweepGrid& grid, std::ostream& out) {
    out << "p1,p2,mean,std,n,converged_frac\n";
    for (const auto& c : grid.cells()) {
        out << format_double(c.p1) << ',' << format_double(c.p2) << ',' << format_double(c.mean) << ','
            << format_double(c.std) << ',' << c.n << ',' << format_double(c.converged_fraction) << '\n';
    }
}

void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out) {
    out << "tag,algorithm,original,projected,p1,p2\n";
    for (const auto& r : rows) {
        out << r.tag << ',' << to_string(r.algorithm) << ',' << format_double(r.original) << ','
            << format_double(r.projected) << ',' << format_double(r.optimum.p1) << ',' << format_double(r.optimum.p2)
            << '\n';
    }
}

}  // namespace reprank
