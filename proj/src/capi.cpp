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

#include "reprank/reprank.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "reprank/graph.hpp"
#include "reprank/metrics.hpp"
#include "reprank/projection.hpp"
#include "reprank/ranking.hpp"
#include "reprank/sweep.hpp"
#include "reprank/synth.hpp"

struct reprank_graph {
    std::shared_ptr<const reprank::RatingGraph> graph;
};

struct reprank_benchmark {
    std::shared_ptr<const reprank::BenchmarkSet> set;
};

struct reprank_result {
    reprank::RankingResult result;
};

struct reprank_truth {
    reprank::SynthTruth truth;
};

struct reprank_sweep {
    reprank::SweepGrid grid;
};

namespace {

thread_local std::string last_error;

reprank_status fail(reprank_status status, const char* what) {
    last_error = what;
    return status;
}

template <class F>
reprank_status guarded(F&& body) noexcept {
    try {
        last_error.clear();
        body();
        return REPRANK_OK;
    } catch (const reprank::ParseError& e) {
        return fail(REPRANK_E_PARSE, e.what());
    } catch (const reprank::IoError& e) {
        return fail(REPRANK_E_IO, e.what());
    } catch (const reprank::DataError& e) {
        return fail(REPRANK_E_DATA, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(REPRANK_E_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(REPRANK_E_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(REPRANK_E_INTERNAL, e.what());
    } catch (...) {
        return fail(REPRANK_E_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

char* copy_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

reprank::RatingFormat to_format(reprank_format f) {
    switch (f) {
        case REPRANK_FORMAT_CSV: return reprank::RatingFormat::kGenericCsv;
        case REPRANK_FORMAT_MOVIELENS: return reprank::RatingFormat::kMovieLens;
    }
    throw std::invalid_argument("unknown rating format");
}

reprank::RankingConfig to_config(const reprank_ranking_config& c) {
    reprank::RankingConfig cfg;
    switch (c.algorithm) {
        case REPRANK_ALGO_MEAN: cfg.algorithm = reprank::Algorithm::kMean; break;
        case REPRANK_ALGO_IR: cfg.algorithm = reprank::Algorithm::kIr; break;
        case REPRANK_ALGO_CR: cfg.algorithm = reprank::Algorithm::kCr; break;
        case REPRANK_ALGO_RR: cfg.algorithm = reprank::Algorithm::kRr; break;
        default: throw std::invalid_argument("unknown algorithm");
    }
    cfg.beta = c.beta;
    cfg.epsilon = c.epsilon;
    cfg.theta = c.theta;
    cfg.delta = c.delta;
    cfg.max_iterations = c.max_iterations;
    cfg.validate();
    return cfg;
}

reprank::SynthSpec to_spec(const reprank_synth_spec& s) {
    reprank::SynthSpec spec;
    spec.num_users = s.num_users;
    spec.num_items = s.num_items;
    spec.num_links = s.num_links;
    spec.q_min = s.q_min;
    spec.q_max = s.q_max;
    spec.delta_min = s.delta_min;
    spec.delta_max = s.delta_max;
    spec.discretization = reprank::discretization_case(s.discretization_case);
    spec.spam_fraction = s.spam_fraction;
    spec.seed = s.seed;
    spec.validate();
    return spec;
}

reprank::SweepSpec to_sweep_spec(const reprank_sweep_config& c) {
    reprank::SweepSpec spec;
    spec.ranking = to_config(c.ranking);
    switch (c.metric) {
        case REPRANK_METRIC_RS: spec.metric = reprank::Metric::kRankingScore; break;
        case REPRANK_METRIC_CORRELATION: spec.metric = reprank::Metric::kCorrelation; break;
        default: throw std::invalid_argument("unknown metric");
    }
    const bool explicit_p1 = c.p1_values && c.p1_count > 0;
    const bool explicit_p2 = c.p2_values && c.p2_count > 0;
    if (!explicit_p1 || !explicit_p2) spec.grid = reprank::GridSpec::uniform(c.grid_step);
    if (explicit_p1) spec.grid.p1_values.assign(c.p1_values, c.p1_values + c.p1_count);
    if (explicit_p2) spec.grid.p2_values.assign(c.p2_values, c.p2_values + c.p2_count);
    spec.realizations = c.realizations;
    spec.master_seed = c.master_seed;
    spec.threads = c.threads;
    if (c.tag) spec.tag = c.tag;
    return spec;
}

}  // namespace

extern "C" {

const char* reprank_version(void) { return "0.1.0"; }

const char* reprank_last_error(void) { return last_error.c_str(); }

void reprank_string_free(char* s) { std::free(s); }

reprank_status reprank_format_parse(const char* name, reprank_format* out) {
    return guarded([&] {
        require(name && out, "null argument");
        const auto f = reprank::parse_rating_format(name);
        require(f.has_value(), "unknown rating format (expected csv or movielens)");
        *out = *f == reprank::RatingFormat::kGenericCsv ? REPRANK_FORMAT_CSV : REPRANK_FORMAT_MOVIELENS;
    });
}

reprank_status reprank_graph_read_file(const char* path, reprank_format format, reprank_graph** out) {
    return guarded([&] {
        require(path && out, "null argument");
        auto g = reprank::ingest_ratings_file(path, to_format(format));
        *out = new reprank_graph{std::make_shared<const reprank::RatingGraph>(std::move(g))};
    });
}

reprank_status reprank_graph_read_buffer(const char* data, size_t size, reprank_format format, reprank_graph** out) {
    return guarded([&] {
        require((data || size == 0) && out, "null argument");
        std::istringstream in(std::string(data ? data : "", size));
        auto g = reprank::ingest_ratings(in, to_format(format));
        *out = new reprank_graph{std::make_shared<const reprank::RatingGraph>(std::move(g))};
    });
}

reprank_status reprank_graph_write_csv(const reprank_graph* graph, char** out) {
    return guarded([&] {
        require(graph && out, "null argument");
        std::ostringstream os;
        reprank::write_ratings_csv(*graph->graph, os);
        *out = copy_string(os.str());
    });
}

reprank_status reprank_graph_stats_get(const reprank_graph* graph, reprank_graph_stats* out) {
    return guarded([&] {
        require(graph && out, "null argument");
        const auto s = reprank::graph_stats(*graph->graph);
        *out = {s.num_users, s.num_items, s.num_links, s.mean_user_degree, s.mean_item_degree, s.sparsity};
    });
}

const char* reprank_graph_user_id(const reprank_graph* graph, size_t user) {
    if (!graph || user >= graph->graph->num_users()) return nullptr;
    return graph->graph->user_id(static_cast<reprank::Index>(user)).c_str();
}

const char* reprank_graph_item_id(const reprank_graph* graph, size_t item) {
    if (!graph || item >= graph->graph->num_items()) return nullptr;
    return graph->graph->item_id(static_cast<reprank::Index>(item)).c_str();
}

reprank_status reprank_graph_project(const reprank_graph* graph, double p1, double p2, reprank_graph** out) {
    return guarded([&] {
        require(graph && out, "null argument");
        auto g = reprank::project_graph(*graph->graph, reprank::ProjectionParams(p1, p2));
        *out = new reprank_graph{std::make_shared<const reprank::RatingGraph>(std::move(g))};
    });
}

void reprank_graph_free(reprank_graph* graph) { delete graph; }

reprank_status reprank_benchmark_read_file(const char* path, const reprank_graph* graph, reprank_benchmark** out,
                                           size_t* skipped) {
    return guarded([&] {
        require(path && graph && out, "null argument");
        auto set = reprank::load_benchmark_file(path, *graph->graph);
        if (skipped) *skipped = set.skipped();
        *out = new reprank_benchmark{std::make_shared<const reprank::BenchmarkSet>(std::move(set))};
    });
}

size_t reprank_benchmark_size(const reprank_benchmark* benchmark) { return benchmark ? benchmark->set->size() : 0; }

void reprank_benchmark_free(reprank_benchmark* benchmark) { delete benchmark; }

void reprank_ranking_config_default(reprank_ranking_config* cfg) {
    if (!cfg) return;
    const reprank::RankingConfig d;
    *cfg = {REPRANK_ALGO_RR, d.beta, d.epsilon, d.theta, d.delta, d.max_iterations};
}

reprank_status reprank_algorithm_parse(const char* name, reprank_algorithm* out) {
    return guarded([&] {
        require(name && out, "null argument");
        const auto a = reprank::parse_algorithm(name);
        require(a.has_value(), "unknown algorithm (expected mean, ir, cr or rr)");
        *out = static_cast<reprank_algorithm>(static_cast<int>(*a));
    });
}

reprank_status reprank_rank(const reprank_graph* graph, const reprank_ranking_config* cfg, reprank_result** out) {
    return guarded([&] {
        require(graph && cfg && out, "null argument");
        auto result = reprank::rank(*graph->graph, to_config(*cfg));
        *out = new reprank_result{std::move(result)};
    });
}

const double* reprank_result_qualities(const reprank_result* result, size_t* count) {
    if (!result) return nullptr;
    if (count) *count = result->result.qualities.size();
    return result->result.qualities.data();
}

const double* reprank_result_reputations(const reprank_result* result, size_t* count) {
    if (!result) return nullptr;
    if (count) *count = result->result.reputations.size();
    return result->result.reputations.data();
}

reprank_status reprank_result_info_get(const reprank_result* result, reprank_result_info* out) {
    return guarded([&] {
        require(result && out, "null argument");
        const auto& r = result->result;
        *out = {r.iterations_used, r.converged ? 1 : 0, r.final_residual};
    });
}

reprank_status reprank_result_write_items_csv(const reprank_result* result, const reprank_graph* graph, char** out) {
    return guarded([&] {
        require(result && graph && out, "null argument");
        const auto& q = result->result.qualities;
        require(q.size() == graph->graph->num_items(), "result does not belong to this graph");
        const auto ranks = reprank::midranks(q);
        std::ostringstream os;
        os.precision(17);
        os << "item_id,quality,rank\n";
        for (reprank::Index a = 0; a < q.size(); ++a) {
            os << graph->graph->item_id(a) << ',';
            if (std::isnan(q[a])) {
                os << "nan";
            } else {
                os << q[a];
            }
            os << ',' << ranks[a] << '\n';
        }
        *out = copy_string(os.str());
    });
}

reprank_status reprank_result_write_users_csv(const reprank_result* result, const reprank_graph* graph, char** out) {
    return guarded([&] {
        require(result && graph && out, "null argument");
        const auto& r = result->result.reputations;
        require(r.size() == graph->graph->num_users(), "result does not belong to this graph");
        std::ostringstream os;
        os.precision(17);
        os << "user_id,reputation\n";
        for (reprank::Index u = 0; u < r.size(); ++u) os << graph->graph->user_id(u) << ',' << r[u] << '\n';
        *out = copy_string(os.str());
    });
}

void reprank_result_free(reprank_result* result) { delete result; }

reprank_status reprank_ranking_score(const reprank_result* result, const reprank_benchmark* benchmark, double* out) {
    return guarded([&] {
        require(result && benchmark && out, "null argument");
        *out = reprank::ranking_score(result->result.qualities, *benchmark->set).value;
    });
}

reprank_status reprank_truth_correlation(const reprank_result* result, const reprank_graph* graph,
                                         const reprank_truth* truth, double* value, int* degenerate) {
    return guarded([&] {
        require(result && graph && truth && value, "null argument");
        require(result->result.reputations.size() == graph->graph->num_users(), "result does not belong to this graph");
        const auto aligned = reprank::align_truth(truth->truth, *graph->graph);
        const auto c = reprank::reputation_error_correlation(result->result.reputations, aligned.error_magnitude);
        *value = c.value;
        if (degenerate) *degenerate = c.degenerate ? 1 : 0;
    });
}

void reprank_synth_spec_default(reprank_synth_spec* spec) {
    if (!spec) return;
    const reprank::SynthSpec d;
    *spec = {d.num_users, d.num_items, d.num_links, d.q_min, d.q_max, d.delta_min, d.delta_max,
             static_cast<int>(d.discretization), d.spam_fraction, d.seed};
}

reprank_status reprank_synth_generate(const reprank_synth_spec* spec, reprank_graph** graph, reprank_truth** truth) {
    return guarded([&] {
        require(spec && graph, "null argument");
        auto net = reprank::synthesize(to_spec(*spec));
        auto g = std::make_unique<reprank_graph>(reprank_graph{
            std::make_shared<const reprank::RatingGraph>(std::move(net.graph))});
        if (truth) *truth = new reprank_truth{std::move(net.truth)};
        *graph = g.release();
    });
}

reprank_status reprank_truth_read_file(const char* path, reprank_truth** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new reprank_truth{reprank::read_truth_file(path)};
    });
}

reprank_status reprank_truth_write(const reprank_truth* truth, char** out) {
    return guarded([&] {
        require(truth && out, "null argument");
        std::ostringstream os;
        reprank::write_truth(truth->truth, os);
        *out = copy_string(os.str());
    });
}

void reprank_truth_free(reprank_truth* truth) { delete truth; }

void reprank_sweep_config_default(reprank_sweep_config* cfg) {
    if (!cfg) return;
    *cfg = reprank_sweep_config{};
    reprank_ranking_config_default(&cfg->ranking);
    cfg->metric = REPRANK_METRIC_RS;
    cfg->grid_step = 0.05;
    cfg->realizations = 10;
    cfg->threads = 1;
    cfg->benchmark_fraction = 0.05;
}

reprank_status reprank_sweep_run_real(const reprank_graph* graph, const reprank_benchmark* benchmark,
                                      const reprank_sweep_config* cfg, reprank_sweep** out) {
    return guarded([&] {
        require(graph && benchmark && cfg && out, "null argument");
        auto spec = to_sweep_spec(*cfg);
        spec.source = reprank::RealSource{graph->graph, benchmark->set};
        *out = new reprank_sweep{reprank::run_sweep(spec)};
    });
}

reprank_status reprank_sweep_run_synth(const reprank_synth_spec* synth, const reprank_sweep_config* cfg,
                                       reprank_sweep** out) {
    return guarded([&] {
        require(synth && cfg && out, "null argument");
        auto spec = to_sweep_spec(*cfg);
        spec.source = reprank::SynthSource{to_spec(*synth), cfg->benchmark_fraction};
        *out = new reprank_sweep{reprank::run_sweep(spec)};
    });
}

reprank_status reprank_sweep_write_csv(const reprank_sweep* sweep, char** out) {
    return guarded([&] {
        require(sweep && out, "null argument");
        std::ostringstream os;
        reprank::write_sweep_csv(sweep->grid, os);
        *out = copy_string(os.str());
    });
}

reprank_status reprank_sweep_optimum(const reprank_sweep* sweep, double* p1, double* p2, double* value) {
    return guarded([&] {
        require(sweep, "null argument");
        const auto opt = reprank::find_optimum(sweep->grid);
        if (p1) *p1 = opt.p1;
        if (p2) *p2 = opt.p2;
        if (value) *value = opt.value;
    });
}

reprank_status reprank_sweep_compare(const reprank_sweep* sweep, double* original, double* projected) {
    return guarded([&] {
        require(sweep, "null argument");
        const auto row = reprank::compare_entry(sweep->grid);
        if (original) *original = row.original;
        if (projected) *projected = row.projected;
    });
}

void reprank_sweep_free(reprank_sweep* sweep) { delete sweep; }

}  // extern "C"
