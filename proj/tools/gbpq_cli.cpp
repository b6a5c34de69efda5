// gbpq: command-line driver for batch path-query evaluation.
//
//   gbpq synth    --out PREFIX                         synthetic DIMACS network
//   gbpq gen      --co F --gr F --out Q                query workload
//   gbpq naive    --co F --gr F --queries Q --out R    per-query A*
//   gbpq gbpq     --co F --gr F --queries Q --out R    group-based evaluation
//   gbpq compare  --naive R1 --gbpq R2                 deviation and speedup
//   gbpq sweep    --co F --gr F --queries Q --out S    cluster counts over (delta, psi, mu)
//   gbpq validate --co F --gr F --result R             path validator

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gbpq/gbpq.hpp"

namespace {

using namespace gbpq;

struct GraphArgs {
    std::string co;
    std::string gr;
};

void add_graph_options(CLI::App *cmd, GraphArgs &g) {
    cmd->add_option("--co", g.co, "DIMACS coordinate file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--gr", g.gr, "DIMACS arc file")->required()->check(CLI::ExistingFile);
}

RoadGraph load(const GraphArgs &args) {
    DimacsStats stats;
    RoadGraph g = load_graph_files(args.co, args.gr, &stats);
    std::cerr << "graph: " << g.node_count() << " nodes, " << g.edge_count() << " arcs, heuristic scale "
              << g.heuristic_scale() << '\n';
    return g;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

void check_queries_fit(const RoadGraph &g, const QuerySet &qs, const std::string &path) {
    for (const auto &q : qs.queries) {
        if (!g.valid(q.source) || !g.valid(q.dest))
            throw std::runtime_error(path + ": query node outside the graph (" + std::to_string(g.node_count()) +
                                     " nodes)");
    }
}

std::string summary_path_for(const std::string &result_path, const std::string &explicit_path) {
    return explicit_path.empty() ? result_path + ".summary.csv" : explicit_path;
}

std::optional<BatchResult> reference_from_csv(const std::string &path, const QuerySet &qs) {
    auto in = open_in(path);
    const auto rows = read_result_csv(in, path);
    if (rows.size() != qs.size()) throw std::runtime_error(path + ": query count differs from the query file");
    BatchResult ref;
    ref.answers.resize(rows.size());
    for (const auto &row : rows) {
        if (row.query >= rows.size()) throw std::runtime_error(path + ": query index out of range");
        ref.answers[row.query].path = row.path;
    }
    return ref;
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::vector<double> range_list(double from, double to, double step) {
    std::vector<double> out;
    for (double v = from; v <= to + 1e-9; v += step) out.push_back(v);
    return out;
}

std::string join(const std::vector<double> &values) {
    std::string out;
    for (const double v : values) out += (out.empty() ? "" : ",") + format_double(v);
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Batch shortest-path queries with shared execution"};
    app.require_subcommand(1);

    // synth
    SyntheticSpec synth;
    std::string synth_out;
    auto *synth_cmd = app.add_subcommand("synth", "Write a synthetic road network as DIMACS .co/.gr files");
    synth_cmd->add_option("--nodes", synth.nodes, "Approximate node count")->capture_default_str();
    synth_cmd->add_option("--side", synth.side, "Side of the square map")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "Output prefix (writes PREFIX.co and PREFIX.gr)")->required();

    // gen
    GraphArgs gen_graph;
    WorkloadSpec spec;
    std::string gen_dist = "gaussian";
    std::string gen_out;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a query workload");
    add_graph_options(gen_cmd, gen_graph);
    gen_cmd->add_option("--n", spec.n, "Number of queries")->capture_default_str();
    gen_cmd->add_option("--omega", spec.omega, "Window side length")->capture_default_str();
    gen_cmd->add_option("--dc", spec.dc, "Minimum query distance coefficient")->capture_default_str();
    gen_cmd->add_option("--dist", gen_dist, "Point distribution")
        ->check(CLI::IsMember({"gaussian", "zipf"}))
        ->capture_default_str();
    gen_cmd->add_option("--qpg", spec.queries_per_group, "Queries per window pair")->capture_default_str();
    gen_cmd->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Query file to write")->required();

    // naive / gbpq
    GraphArgs run_graph;
    std::string run_queries, run_out, run_summary, run_reference;
    unsigned threads = 1;
    EngineConfig cfg;
    bool no_deviation = false, no_fallback = false;
    auto *naive_cmd = app.add_subcommand("naive", "Answer each query with its own A* search");
    auto *gbpq_cmd = app.add_subcommand("gbpq", "Answer queries with group-based shared execution");
    for (auto *cmd : {naive_cmd, gbpq_cmd}) {
        add_graph_options(cmd, run_graph);
        cmd->add_option("--queries", run_queries, "Query file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", run_out, "Result CSV")->required();
        cmd->add_option("--summary", run_summary, "Summary CSV (default: OUT.summary.csv)");
        cmd->add_option("--threads", threads, "Worker threads; 1 is deterministic")->capture_default_str();
    }
    gbpq_cmd->add_option("--delta", cfg.cluster.delta, "Half side of the influence squares")->capture_default_str();
    gbpq_cmd->add_option("--psi", cfg.cluster.psi, "Distance threshold")->capture_default_str();
    gbpq_cmd->add_option("--mu", cfg.cluster.mu, "Minimum first-pass cluster size")->capture_default_str();
    gbpq_cmd->add_option("--w-perp", cfg.cluster.weights.perpendicular, "Perpendicular weight")->capture_default_str();
    gbpq_cmd->add_option("--w-par", cfg.cluster.weights.parallel, "Parallel weight")->capture_default_str();
    gbpq_cmd->add_option("--w-theta", cfg.cluster.weights.angular, "Angular weight")->capture_default_str();
    gbpq_cmd->add_option("--reference", run_reference, "Naive result CSV used for deviations")
        ->check(CLI::ExistingFile);
    gbpq_cmd->add_flag("--no-deviation", no_deviation, "Skip the exact reference run");
    gbpq_cmd->add_flag("--no-fallback", no_fallback, "Report no-path instead of falling back to exact search");

    // compare
    std::string cmp_naive, cmp_gbpq, cmp_naive_summary, cmp_gbpq_summary, cmp_out, cmp_report;
    auto *cmp_cmd = app.add_subcommand("compare", "Deviation and speedup of a gbpq run against a naive run");
    cmp_cmd->add_option("--naive", cmp_naive, "Naive result CSV")->required()->check(CLI::ExistingFile);
    cmp_cmd->add_option("--gbpq", cmp_gbpq, "GBPQ result CSV")->required()->check(CLI::ExistingFile);
    cmp_cmd->add_option("--naive-summary", cmp_naive_summary, "Naive summary (default: NAIVE.summary.csv)");
    cmp_cmd->add_option("--gbpq-summary", cmp_gbpq_summary, "GBPQ summary (default: GBPQ.summary.csv)");
    cmp_cmd->add_option("--out", cmp_out, "Per-query comparison CSV");
    cmp_cmd->add_option("--report", cmp_report, "Aggregate key,value CSV (also printed to stdout)");

    // sweep
    GraphArgs sweep_graph;
    std::string sweep_queries, sweep_out;
    std::string deltas = join(range_list(70, 130, 10));
    std::string psis = join(range_list(100, 200, 20));
    std::string mus = "1,10,20,30,40";
    auto *sweep_cmd = app.add_subcommand("sweep", "Cluster counts over a (delta, psi, mu) grid");
    add_graph_options(sweep_cmd, sweep_graph);
    sweep_cmd->add_option("--queries", sweep_queries, "Query file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--deltas", deltas, "Comma-separated delta values")->capture_default_str();
    sweep_cmd->add_option("--psis", psis, "Comma-separated psi values")->capture_default_str();
    sweep_cmd->add_option("--mus", mus, "Comma-separated mu values")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Sweep CSV")->required();

    // validate
    GraphArgs val_graph;
    std::string val_result, val_queries;
    auto *val_cmd = app.add_subcommand("validate", "Check every path in a result CSV against the graph");
    add_graph_options(val_cmd, val_graph);
    val_cmd->add_option("--result", val_result, "Result CSV")->required()->check(CLI::ExistingFile);
    val_cmd->add_option("--queries", val_queries, "Query file to cross-check endpoints")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth_cmd) {
            const RoadGraph g = synthetic_road_network(synth);
            auto co = open_out(synth_out + ".co");
            auto gr = open_out(synth_out + ".gr");
            write_dimacs(g, co, gr, "synthetic road network seed " + std::to_string(synth.seed));
            std::cerr << "wrote " << g.node_count() << " nodes, " << g.edge_count() << " arcs\n";
            return 0;
        }

        if (*gen_cmd) {
            spec.distribution = parse_distribution(gen_dist);
            const RoadGraph g = load(gen_graph);
            const QuerySet qs = generate_workload(g, spec);
            save_queries(qs, gen_out);
            std::cerr << "wrote " << qs.size() << " queries to " << gen_out << '\n';
            return 0;
        }

        if (*naive_cmd || *gbpq_cmd) {
            const RoadGraph g = load(run_graph);
            const QuerySet qs = load_queries(run_queries);
            check_queries_fit(g, qs, run_queries);
            BatchResult result;
            std::optional<double> aggregate;
            bool with_deviation = true;
            if (*naive_cmd) {
                result = evaluate_naive(g, qs.queries, threads);
            } else {
                cfg.threads = threads;
                cfg.fallback_on_degenerate_region = cfg.fallback_on_fragment_failure = !no_fallback;
                const GridIndex idx(g, GridIndex::default_cell_size(g));
                result = evaluate_gbpq(g, idx, qs.queries, cfg);
                if (!no_deviation) {
                    const BatchResult reference =
                        run_reference.empty() ? evaluate_naive(g, qs.queries, threads) : *reference_from_csv(run_reference, qs);
                    attach_deviation(result, reference);
                    aggregate = aggregate_deviation(result, reference);
                } else {
                    with_deviation = false;
                }
            }
            auto out = open_out(run_out);
            write_result_csv(out, qs.queries, result, with_deviation);
            auto summary = open_out(summary_path_for(run_out, run_summary));
            write_summary_csv(summary, *naive_cmd ? "naive" : "gbpq", result, aggregate);
            std::cerr << (*naive_cmd ? "naive" : "gbpq") << ": " << qs.size() << " queries, "
                      << result.no_path_count << " without path, " << result.fallback_count << " fallbacks, "
                      << result.cluster_stats.cluster_count << " clusters, " << result.timings.total << " s\n";
            return 0;
        }

        if (*cmp_cmd) {
            auto naive_in = open_in(cmp_naive);
            auto gbpq_in = open_in(cmp_gbpq);
            const auto naive_rows = read_result_csv(naive_in, cmp_naive);
            const auto gbpq_rows = read_result_csv(gbpq_in, cmp_gbpq);
            if (naive_rows.size() != gbpq_rows.size()) throw std::runtime_error("result files differ in query count");

            std::optional<std::ofstream> per_query;
            if (!cmp_out.empty()) {
                per_query = open_out(cmp_out);
                *per_query << "query,naive_cost,gbpq_cost,deviation_percent\n";
            }
            double total_naive = 0.0, total_gbpq = 0.0, dev_sum = 0.0, dev_max = 0.0;
            std::size_t compared = 0;
            for (std::size_t i = 0; i < naive_rows.size(); ++i) {
                const auto &a = naive_rows[i];
                const auto &b = gbpq_rows[i];
                if (a.query != b.query || !(a.endpoints == b.endpoints))
                    throw std::runtime_error("row " + std::to_string(i) + " refers to different queries");
                if (!a.path || !b.path) {
                    if (per_query) *per_query << a.query << ",,,\n";
                    continue;
                }
                const double dev = (a.path->cost == 0.0 && b.path->cost > 0.0)
                                       ? std::numeric_limits<double>::infinity()
                                       : deviation_percent(b.path->cost, a.path->cost);
                total_naive += a.path->cost;
                total_gbpq += b.path->cost;
                dev_sum += dev;
                dev_max = std::max(dev_max, dev);
                ++compared;
                if (per_query)
                    *per_query << a.query << ',' << format_double(a.path->cost) << ',' << format_double(b.path->cost)
                               << ',' << format_double(dev) << '\n';
            }

            auto time_of = [](const std::string &path) -> std::optional<double> {
                std::ifstream in(path);
                if (!in) return std::nullopt;
                const auto kv = read_summary_csv(in, path);
                const auto it = kv.find("time_total_s");
                if (it == kv.end()) return std::nullopt;
                return std::stod(it->second);
            };
            const auto naive_time = time_of(summary_path_for(cmp_naive, cmp_naive_summary));
            const auto gbpq_time = time_of(summary_path_for(cmp_gbpq, cmp_gbpq_summary));

            std::ostringstream report;
            report << "key,value\n";
            report << "queries," << naive_rows.size() << '\n';
            report << "compared," << compared << '\n';
            report << "total_naive_cost," << format_double(total_naive) << '\n';
            report << "total_gbpq_cost," << format_double(total_gbpq) << '\n';
            report << "aggregate_deviation_percent," << format_double(deviation_percent(total_gbpq, total_naive))
                   << '\n';
            report << "mean_deviation_percent,"
                   << format_double(compared ? dev_sum / static_cast<double>(compared) : 0.0) << '\n';
            report << "max_deviation_percent," << format_double(dev_max) << '\n';
            report << "naive_time_s," << (naive_time ? format_double(*naive_time) : "") << '\n';
            report << "gbpq_time_s," << (gbpq_time ? format_double(*gbpq_time) : "") << '\n';
            report << "speedup,"
                   << (naive_time && gbpq_time && *gbpq_time > 0.0 ? format_double(*naive_time / *gbpq_time) : "")
                   << '\n';
            std::cout << report.str();
            if (!cmp_report.empty()) open_out(cmp_report) << report.str();
            return 0;
        }

        if (*sweep_cmd) {
            const RoadGraph g = load(sweep_graph);
            const QuerySet qs = load_queries(sweep_queries);
            check_queries_fit(g, qs, sweep_queries);
            std::vector<QLine> lines;
            for (const auto &q : qs.queries) {
                const QLine l{g.coord(q.source), g.coord(q.dest)};
                if (!l.degenerate()) lines.push_back(l);
            }
            auto out = open_out(sweep_out);
            out << "delta,psi,mu,clusters,first_pass_clusters,first_pass_unclustered,clustering_s\n";
            for (const double delta : parse_list(deltas)) {
                for (const double psi : parse_list(psis)) {
                    for (const double mu : parse_list(mus)) {
                        ClusterParams p;
                        p.delta = delta;
                        p.psi = psi;
                        p.mu = static_cast<std::size_t>(std::llround(mu));
                        const auto start = std::chrono::steady_clock::now();
                        const auto res = cluster_queries(lines, p);
                        const double secs =
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                        out << format_double(delta) << ',' << format_double(psi) << ',' << p.mu << ','
                            << res.clusters.size() << ',' << res.first_pass_clusters << ','
                            << res.first_pass_unclustered << ',' << format_double(secs) << '\n';
                    }
                }
            }
            return 0;
        }

        if (*val_cmd) {
            const RoadGraph g = load(val_graph);
            auto in = open_in(val_result);
            const auto rows = read_result_csv(in, val_result);
            std::optional<QuerySet> qs;
            if (!val_queries.empty()) qs = load_queries(val_queries);
            if (qs && qs->size() != rows.size()) throw std::runtime_error("result and query file differ in length");
            std::size_t bad = 0, checked = 0;
            for (const auto &row : rows) {
                PathQuery q = row.endpoints;
                if (qs) {
                    if (row.query >= qs->size() || !(qs->queries[row.query] == q)) {
                        std::cerr << "query " << row.query << ": endpoints differ from the query file\n";
                        ++bad;
                        continue;
                    }
                }
                if (!row.path) continue;
                ++checked;
                if (!g.valid(q.source) || !g.valid(q.dest)) {
                    std::cerr << "query " << row.query << ": endpoint outside the graph\n";
                    ++bad;
                    continue;
                }
                const auto check = validate_path(g, *row.path, q.source, q.dest);
                if (!check) {
                    std::cerr << "query " << row.query << ": " << check.reason << '\n';
                    ++bad;
                }
            }
            std::cout << "checked " << checked << " paths, " << bad << " invalid\n";
            return bad == 0 ? 0 : 1;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
