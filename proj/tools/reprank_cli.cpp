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

// reprank command-line front end. Everything goes through the C API of
// libreprank; this file only parses flags and writes files.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "reprank/reprank.h"

namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(reprank_status status, const std::string& context) {
    if (status != REPRANK_OK) throw Failure(context + ": " + reprank_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<reprank_graph, Deleter<reprank_graph, reprank_graph_free>>;
using Benchmark = std::unique_ptr<reprank_benchmark, Deleter<reprank_benchmark, reprank_benchmark_free>>;
using Result = std::unique_ptr<reprank_result, Deleter<reprank_result, reprank_result_free>>;
using Truth = std::unique_ptr<reprank_truth, Deleter<reprank_truth, reprank_truth_free>>;
using Sweep = std::unique_ptr<reprank_sweep, Deleter<reprank_sweep, reprank_sweep_free>>;

std::string take(char* s) {
    std::string out(s ? s : "");
    reprank_string_free(s);
    return out;
}

struct Options {
    // global
    std::string out_dir;
    std::size_t threads = 1;
    bool verbose = false;

    // data
    std::string ratings;
    std::string format = "csv";
    std::string benchmark;
    std::string truth;

    // ranking
    std::string algorithm = "rr";
    double beta = 1.0;
    double epsilon = 1e-8;
    double theta = 5.0;
    double delta = 1e-4;
    std::size_t max_iter = 1000;
    double p1 = 0.5;
    double p2 = 0.5;

    // synthetic
    std::size_t users = 6000;
    std::size_t items = 4000;
    std::size_t links = 480000;
    int synth_case = 0;
    std::vector<int> synth_cases{0, 1, 2, 3, 4};
    double spam_p = 0.0;
    std::uint64_t seed = 0;

    // sweep
    std::string metric = "rs";
    double grid_step = 0.05;
    std::size_t realizations = 10;
    double p1_fixed = NAN;
    double p2_fixed = NAN;
    std::vector<std::string> algorithms{"mean", "ir", "cr", "rr"};

    // outputs
    std::string out;
    std::string out_ratings;
    std::string out_truth;
    std::string out_items;
    std::string out_users;
};

void log(const Options& o, const std::string& msg) {
    if (o.verbose) std::cerr << "reprank: " << msg << '\n';
}

fs::path resolve_output(const Options& o, const std::string& name) {
    fs::path p(name);
    if (p.is_relative() && !o.out_dir.empty()) p = fs::path(o.out_dir) / p;
    return p;
}

void require_input(const std::string& path, const char* what) {
    if (path.empty()) return;
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) throw Failure(std::string(what) + " not found: " + path);
}

// Fails before any work starts if the directory of an output cannot take a file.
// Devices and pipes (/dev/null, /dev/stdout) are written in place.
bool is_special(const fs::path& target) {
    std::error_code ec;
    return fs::exists(target, ec) && !fs::is_regular_file(target, ec);
}

void require_writable(const fs::path& target) {
    if (is_special(target)) return;
    const auto dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Failure("output directory does not exist: " + dir.string());
    if (::access(dir.c_str(), W_OK) != 0) throw Failure("output directory is not writable: " + dir.string());
}

// Temp file + rename so a reader never sees a half-written artifact.
void write_atomic(const fs::path& target, const std::string& header, const std::string& body) {
    if (is_special(target)) {
        std::ofstream out(target, std::ios::binary);
        out << header << body;
        if (!out.flush()) throw Failure("write failed: " + target.string());
        return;
    }
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Failure("cannot write " + tmp.string());
        out << header << body;
        out.flush();
        if (!out) throw Failure("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Failure("cannot move output into place: " + target.string());
    }
}

// Shortest text that reads back to the same double.
std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Resolved configuration of the running subcommand as '#' comment lines.
// Unset options are echoed with their defaults.

std::string config_header(const CLI::App& app, const CLI::App& sub) {
    std::ostringstream os;
    os << "# reprank " << reprank_version() << ' ' << sub.get_name() << '\n';
    const auto emit = [&](const CLI::App& a, const std::string& prefix) {
        for (const auto* opt : a.get_options()) {
            const auto name = opt->get_single_name();
            if (name.empty() || name == "help" || name == "config" || name == "out-dir") continue;
            std::string value;
            if (opt->get_items_expected_max() == 0) {
                value = opt->count() > 0 ? "1" : "0";
            } else if (opt->count() > 0) {
                for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
            } else {
                value = opt->get_default_str();
            }
            os << "# " << prefix << name << '=' << value << '\n';
        }
    };
    emit(app, "");
    emit(sub, sub.get_name() + ".");
    return os.str();
}

reprank_format parse_format(const std::string& name) {
    reprank_format f{};
    check(reprank_format_parse(name.c_str(), &f), "--format");
    return f;
}

Graph load_graph(const Options& o) {
    reprank_graph* g = nullptr;
    log(o, "reading " + o.ratings);
    check(reprank_graph_read_file(o.ratings.c_str(), parse_format(o.format), &g), o.ratings);
    return Graph(g);
}

Graph project(const Options& o, const reprank_graph* g) {
    reprank_graph* projected = nullptr;
    check(reprank_graph_project(g, o.p1, o.p2, &projected), "projection");
    return Graph(projected);
}

reprank_ranking_config ranking_config(const Options& o, const std::string& algorithm) {
    reprank_ranking_config cfg;
    reprank_ranking_config_default(&cfg);
    check(reprank_algorithm_parse(algorithm.c_str(), &cfg.algorithm), "--algorithm");
    cfg.beta = o.beta;
    cfg.epsilon = o.epsilon;
    cfg.theta = o.theta;
    cfg.delta = o.delta;
    cfg.max_iterations = o.max_iter;
    return cfg;
}

reprank_synth_spec synth_spec(const Options& o, int which) {
    reprank_synth_spec s;
    reprank_synth_spec_default(&s);
    s.num_users = o.users;
    s.num_items = o.items;
    s.num_links = o.links;
    s.discretization_case = which;
    s.spam_fraction = o.spam_p;
    s.seed = o.seed;
    return s;
}

Result run_rank(const Options& o, const reprank_graph* g) {
    const auto cfg = ranking_config(o, o.algorithm);
    reprank_result* r = nullptr;
    log(o, "ranking with " + o.algorithm);
    check(reprank_rank(g, &cfg, &r), "ranking");
    Result result(r);
    reprank_result_info info{};
    check(reprank_result_info_get(result.get(), &info), "ranking");
    if (!info.converged) {
        std::cerr << "reprank: warning: " << o.algorithm << " did not converge in " << info.iterations_used
                  << " iterations (residual " << info.final_residual << ")\n";
    }
    return result;
}

void print_stats(const reprank_graph* g) {
    reprank_graph_stats s{};
    check(reprank_graph_stats_get(g, &s), "stats");
    std::cout << "users=" << s.num_users << " items=" << s.num_items << " links=" << s.num_links
              << " mean_user_degree=" << s.mean_user_degree << " mean_item_degree=" << s.mean_item_degree
              << " sparsity=" << s.sparsity << '\n';
}

void cmd_ingest(const Options& o, const std::string& header) {
    const auto g = load_graph(o);
    print_stats(g.get());
    if (!o.out.empty()) {
        char* text = nullptr;
        check(reprank_graph_write_csv(g.get(), &text), "serialize");
        write_atomic(resolve_output(o, o.out), header, take(text));
    }
}

void cmd_synth(const Options& o, const std::string& header) {
    const auto spec = synth_spec(o, o.synth_case);
    reprank_graph* g = nullptr;
    reprank_truth* t = nullptr;
    log(o, "generating synthetic network");
    check(reprank_synth_generate(&spec, &g, &t), "synth");
    Graph graph(g);
    Truth truth(t);
    char* text = nullptr;
    check(reprank_graph_write_csv(graph.get(), &text), "serialize");
    write_atomic(resolve_output(o, o.out_ratings), header, take(text));
    if (!o.out_truth.empty()) {
        check(reprank_truth_write(truth.get(), &text), "serialize truth");
        write_atomic(resolve_output(o, o.out_truth), header, take(text));
    }
    print_stats(graph.get());
}

void cmd_rank(const Options& o, const std::string& header) {
    const auto g = load_graph(o);
    const auto projected = project(o, g.get());
    const auto result = run_rank(o, projected.get());
    char* text = nullptr;
    check(reprank_result_write_items_csv(result.get(), projected.get(), &text), "items");
    write_atomic(resolve_output(o, o.out_items), header, take(text));
    if (!o.out_users.empty()) {
        check(reprank_result_write_users_csv(result.get(), projected.get(), &text), "users");
        write_atomic(resolve_output(o, o.out_users), header, take(text));
    }
    reprank_result_info info{};
    check(reprank_result_info_get(result.get(), &info), "ranking");
    std::cout << "algorithm=" << o.algorithm << " iterations=" << info.iterations_used
              << " converged=" << info.converged << " residual=" << info.final_residual << '\n';
}

void cmd_eval(const Options& o, const std::string&) {
    if (o.benchmark.empty() && o.truth.empty()) throw Failure("eval needs --benchmark and/or --truth");
    const auto g = load_graph(o);
    const auto projected = project(o, g.get());
    const auto result = run_rank(o, projected.get());
    if (!o.benchmark.empty()) {
        reprank_benchmark* b = nullptr;
        std::size_t skipped = 0;
        check(reprank_benchmark_read_file(o.benchmark.c_str(), g.get(), &b, &skipped), o.benchmark);
        Benchmark bench(b);
        if (skipped) std::cerr << "reprank: " << skipped << " benchmark ids not in the graph were skipped\n";
        double rs = 0.0;
        check(reprank_ranking_score(result.get(), bench.get(), &rs), "ranking score");
        std::cout << "rs=" << rs << " benchmark_size=" << reprank_benchmark_size(bench.get()) << '\n';
    }
    if (!o.truth.empty()) {
        reprank_truth* t = nullptr;
        check(reprank_truth_read_file(o.truth.c_str(), &t), o.truth);
        Truth truth(t);
        double corr = 0.0;
        int degenerate = 0;
        check(reprank_truth_correlation(result.get(), projected.get(), truth.get(), &corr, &degenerate), "correlation");
        std::cout << "corr=" << corr << " degenerate=" << degenerate << '\n';
    }
}

reprank_sweep_config sweep_config(const Options& o, const std::string& algorithm, const std::vector<double>& p1_axis,
                                  const std::vector<double>& p2_axis, const std::string& tag) {
    reprank_sweep_config cfg;
    reprank_sweep_config_default(&cfg);
    cfg.ranking = ranking_config(o, algorithm);
    cfg.grid_step = o.grid_step;
    if (!p1_axis.empty()) {
        cfg.p1_values = p1_axis.data();
        cfg.p1_count = p1_axis.size();
    }
    if (!p2_axis.empty()) {
        cfg.p2_values = p2_axis.data();
        cfg.p2_count = p2_axis.size();
    }
    cfg.realizations = o.ratings.empty() ? o.realizations : 1;
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;
    cfg.tag = tag.c_str();
    return cfg;
}

Sweep run_one_sweep(const Options& o, const reprank_sweep_config& cfg, const reprank_graph* g,
                    const reprank_benchmark* b, int which) {
    reprank_sweep* s = nullptr;
    if (g) {
        check(reprank_sweep_run_real(g, b, &cfg, &s), "sweep");
    } else {
        const auto spec = synth_spec(o, which);
        check(reprank_sweep_run_synth(&spec, &cfg, &s), "sweep");
    }
    return Sweep(s);
}

struct RealData {
    Graph graph;
    Benchmark benchmark;
};

RealData load_real(const Options& o) {
    RealData d{load_graph(o), nullptr};
    if (!o.benchmark.empty()) {
        reprank_benchmark* b = nullptr;
        std::size_t skipped = 0;
        check(reprank_benchmark_read_file(o.benchmark.c_str(), d.graph.get(), &b, &skipped), o.benchmark);
        d.benchmark.reset(b);
        if (skipped) std::cerr << "reprank: " << skipped << " benchmark ids not in the graph were skipped\n";
    }
    return d;
}

void cmd_sweep(const Options& o, const std::string& header) {
    std::vector<double> p1_axis;
    std::vector<double> p2_axis;
    if (!std::isnan(o.p1_fixed)) p1_axis.push_back(o.p1_fixed);
    if (!std::isnan(o.p2_fixed)) p2_axis.push_back(o.p2_fixed);

    RealData real;
    if (!o.ratings.empty()) real = load_real(o);
    const std::string tag = o.ratings.empty() ? "case" + std::to_string(o.synth_case) : o.ratings;
    auto cfg = sweep_config(o, o.algorithm, p1_axis, p2_axis, tag);
    cfg.metric = o.metric == "rs" ? REPRANK_METRIC_RS : REPRANK_METRIC_CORRELATION;
    log(o, "sweeping");
    const auto sweep = run_one_sweep(o, cfg, real.graph.get(), real.benchmark.get(), o.synth_case);

    char* text = nullptr;
    check(reprank_sweep_write_csv(sweep.get(), &text), "serialize sweep");
    write_atomic(resolve_output(o, o.out), header, take(text));

    double p1 = 0.0;
    double p2 = 0.0;
    double value = 0.0;
    check(reprank_sweep_optimum(sweep.get(), &p1, &p2, &value), "optimum");
    std::cout << "optimum p1=" << p1 << " p2=" << p2 << ' ' << o.metric << '=' << value << '\n';
}

void cmd_table(const Options& o, const std::string& header) {
    RealData real;
    if (!o.ratings.empty()) real = load_real(o);
    std::vector<int> rows = o.ratings.empty() ? o.synth_cases : std::vector<int>{-1};

    std::ostringstream csv;
    csv << "tag,algorithm,original,projected,p1,p2\n";
    for (const int which : rows) {
        const std::string tag = which < 0 ? fs::path(o.ratings).filename().string() : "case" + std::to_string(which);
        for (const auto& algorithm : o.algorithms) {
            log(o, "table row " + tag + " / " + algorithm);
            auto cfg = sweep_config(o, algorithm, {}, {}, tag);
            cfg.metric = REPRANK_METRIC_RS;
            const auto sweep = run_one_sweep(o, cfg, real.graph.get(), real.benchmark.get(), which);
            double original = 0.0;
            double projected = 0.0;
            double p1 = 0.0;
            double p2 = 0.0;
            check(reprank_sweep_compare(sweep.get(), &original, &projected), "compare");
            check(reprank_sweep_optimum(sweep.get(), &p1, &p2, nullptr), "optimum");
            csv << tag << ',' << algorithm << ',' << num(original) << ',' << num(projected) << ',' << num(p1) << ','
                << num(p2) << '\n';
            std::cout << tag << ' ' << algorithm << " original=" << original << " projected=" << projected << '\n';
        }
    }
    write_atomic(resolve_output(o, o.out), header, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reputation-aware ranking on bipartite rating networks"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config", "", "Key-value config file; command-line flags take precedence");

    Options o;
    if (const char* env = std::getenv("REPRANK_OUT_DIR")) o.out_dir = env;
    app.add_option("--out-dir", o.out_dir, "Directory for relative output paths (env REPRANK_OUT_DIR)");
    app.add_option("--threads", o.threads, "Worker threads for sweeps")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", o.verbose, "Progress messages on stderr");

    const auto add_data = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--ratings", o.ratings, "Ratings file");
        if (required) opt->required();
        sub->add_option("--format", o.format, "Ratings format: csv | movielens")->capture_default_str();
        return opt;
    };
    const auto add_ranking = [&](CLI::App* sub, bool with_algorithm = true) {
        if (with_algorithm) sub->add_option("--algorithm", o.algorithm, "mean | ir | cr | rr")->capture_default_str();
        sub->add_option("--beta", o.beta, "IR exponent")->capture_default_str();
        sub->add_option("--epsilon", o.epsilon, "IR regularizer")->capture_default_str();
        sub->add_option("--theta", o.theta, "RR redistribution exponent")->capture_default_str();
        sub->add_option("--delta", o.delta, "Convergence threshold")->capture_default_str();
        sub->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
    };
    const auto add_projection = [&](CLI::App* sub) {
        sub->add_option("--p1", o.p1, "Projection of rating 2: 1 + 2*p1")->capture_default_str();
        sub->add_option("--p2", o.p2, "Projection of rating 4: 3 + 2*p2")->capture_default_str();
    };
    const auto add_synth = [&](CLI::App* sub) {
        std::vector<CLI::Option*> opts;
        opts.push_back(sub->add_option("--users", o.users, "Synthetic users")->capture_default_str());
        opts.push_back(sub->add_option("--items", o.items, "Synthetic items")->capture_default_str());
        opts.push_back(sub->add_option("--links", o.links, "Synthetic links")->capture_default_str());
        opts.push_back(sub->add_option("--spam-p", o.spam_p, "Fraction of ratings replaced by noise")
                           ->capture_default_str());
        return opts;
    };

    auto* ingest = app.add_subcommand("ingest", "Read a ratings file, print its statistics, optionally re-emit CSV");
    add_data(ingest, true);
    ingest->add_option("--out", o.out, "Normalized CSV output");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic rating network");
    add_synth(synth);
    synth->add_option("--case", o.synth_case, "Discretization case 0..4")->capture_default_str()->check(CLI::Range(0, 4));
    synth->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    synth->add_option("--out-ratings", o.out_ratings, "Ratings CSV")->required();
    synth->add_option("--out-truth", o.out_truth, "Ground truth file");

    auto* rank = app.add_subcommand("rank", "Rank items and users");
    add_data(rank, true);
    add_ranking(rank);
    add_projection(rank);
    rank->add_option("--out-items", o.out_items, "item_id,quality,rank CSV")->capture_default_str()->default_val("items.csv");
    rank->add_option("--out-users", o.out_users, "user_id,reputation CSV");

    auto* eval = app.add_subcommand("eval", "Rank, then score against a benchmark and/or ground truth");
    add_data(eval, true);
    add_ranking(eval);
    add_projection(eval);
    eval->add_option("--benchmark", o.benchmark, "Benchmark item ids, one per line");
    eval->add_option("--truth", o.truth, "Ground truth file from `synth`");

    auto* sweep = app.add_subcommand("sweep", "Evaluate a metric over the (p1, p2) grid");
    auto* sweep_ratings = add_data(sweep, false);
    add_ranking(sweep);
    sweep->add_option("--metric", o.metric, "rs | corr")->capture_default_str();
    sweep->add_option("--grid-step", o.grid_step, "Grid spacing on [0,1]")->capture_default_str();
    sweep->add_option("--realizations", o.realizations, "Synthetic realizations per cell")->capture_default_str();
    sweep->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    sweep->add_option("--benchmark", o.benchmark, "Benchmark for real-data RS")->needs(sweep_ratings);
    auto* sweep_case = sweep->add_option("--synth-case", o.synth_case, "Synthetic discretization case 0..4")
                           ->check(CLI::Range(0, 4));
    for (auto* opt : add_synth(sweep)) opt->excludes(sweep_ratings);
    sweep_case->excludes(sweep_ratings);
    sweep->add_option("--p1-fixed", o.p1_fixed, "Pin p1 (1-D slice over p2)");
    sweep->add_option("--p2-fixed", o.p2_fixed, "Pin p2 (1-D slice over p1)");
    sweep->add_option("--out", o.out, "Long-form CSV p1,p2,mean,std,n,converged_frac")->capture_default_str()->default_val("sweep.csv");

    auto* table = app.add_subcommand("table", "Original vs projected-optimum RS per algorithm");
    auto* table_ratings = add_data(table, false);
    table->add_option("--benchmark", o.benchmark, "Benchmark for real-data RS")->needs(table_ratings);
    table->add_option("--algorithms", o.algorithms, "Algorithms to compare")->delimiter(',')->capture_default_str();
    auto* table_cases = table->add_option("--synth-cases", o.synth_cases, "Synthetic cases, one row each")
                            ->delimiter(',')
                            ->check(CLI::Range(0, 4))
                            ->capture_default_str();
    table_cases->excludes(table_ratings);
    for (auto* opt : add_synth(table)) opt->excludes(table_ratings);
    add_ranking(table, false);
    table->add_option("--grid-step", o.grid_step, "Grid spacing on [0,1]")->capture_default_str();
    table->add_option("--realizations", o.realizations, "Synthetic realizations per cell")->capture_default_str();
    table->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    table->add_option("--out", o.out, "Table CSV")->capture_default_str()->default_val("table.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const CLI::App* selected = app.get_subcommands().front();
    try {
        require_input(o.ratings, "ratings file");
        require_input(o.benchmark, "benchmark file");
        require_input(o.truth, "truth file");
        if ((selected == sweep || selected == table) && !o.ratings.empty() && o.benchmark.empty()) {
            throw Failure("real-data " + selected->get_name() + " needs --benchmark");
        }
        if (selected == sweep && o.metric != "rs" && o.metric != "corr") throw Failure("--metric must be rs or corr");
        for (const auto* name : {&o.out, &o.out_ratings, &o.out_truth, &o.out_items, &o.out_users}) {
            if (!name->empty()) require_writable(resolve_output(o, *name));
        }

        const auto header = config_header(app, *selected);
        if (selected == ingest) cmd_ingest(o, header);
        else if (selected == synth) cmd_synth(o, header);
        else if (selected == rank) cmd_rank(o, header);
        else if (selected == eval) cmd_eval(o, header);
        else if (selected == sweep) cmd_sweep(o, header);
        else if (selected == table) cmd_table(o, header);
    } catch (const std::exception& e) {
        std::cerr << "reprank: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
