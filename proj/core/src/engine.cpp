#include "gbpq/engine.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace gbpq {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void finish(BatchResult &r) {
    for (const auto &a : r.answers) {
        if (!a.answered()) ++r.no_path_count;
        if (a.kind == AnswerKind::fallback) ++r.fallback_count;
    }
    r.per_query_deviation.assign(r.answers.size(), 0.0);
}

QueryAnswer exact_answer(const RoadGraph &g, const PathQuery &q, AnswerKind kind, SearchWorkspace &ws) {
    return {find_astar(g, q.source, q.dest, ws), kind, std::nullopt};
}

void check_queries(const RoadGraph &g, std::span<const PathQuery> queries) {
    for (const auto &q : queries) {
        if (!g.valid(q.source) || !g.valid(q.dest)) throw std::out_of_range("query references a node outside the graph");
    }
}

}  // namespace

std::string to_string(AnswerKind k) {
    switch (k) {
    case AnswerKind::naive: return "naive";
    case AnswerKind::trivial: return "trivial";
    case AnswerKind::cluster: return "cluster";
    case AnswerKind::fallback: return "fallback";
    }
    return "unknown";
}

BatchResult evaluate_naive(const RoadGraph &g, std::span<const PathQuery> queries, unsigned threads) {
    check_queries(g, queries);
    const Stopwatch total;
    BatchResult r;
    r.answers.resize(queries.size());
    detail::parallel_for(queries.size(), threads, g.node_count(), [&](std::size_t i, SearchWorkspace &ws) {
        r.answers[i] = exact_answer(g, queries[i], AnswerKind::naive, ws);
    });
    r.timings.construction = r.timings.total = total.seconds();
    finish(r);
    return r;
}

BatchResult evaluate_gbpq(const RoadGraph &g, const GridIndex &idx, std::span<const PathQuery> queries,
                          const EngineConfig &cfg) {
    check_queries(g, queries);
    cfg.cluster.validate();
    const Stopwatch total;
    BatchResult r;
    r.answers.resize(queries.size());

    // Q-lines. Trivial queries are answered here; queries whose endpoints
    // share coordinates cannot form a line and go straight to exact search.
    Stopwatch phase;
    std::vector<QLine> lines;
    std::vector<std::size_t> line_query;
    std::vector<std::size_t> exact_queries;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto &q = queries[i];
        if (q.source == q.dest) {
            r.answers[i] = {RoutePath{{q.source}, 0.0}, AnswerKind::trivial, std::nullopt};
            continue;
        }
        const QLine line{g.coord(q.source), g.coord(q.dest)};
        if (line.degenerate()) {
            exact_queries.push_back(i);
            continue;
        }
        lines.push_back(line);
        line_query.push_back(i);
    }
    r.timings.qline = phase.seconds();

    phase = Stopwatch();
    const ClusteringResult clustering = cluster_queries(lines, cfg.cluster);
    r.timings.clustering = phase.seconds();

    phase = Stopwatch();
    auto regions = build_regions(clustering.clusters, lines);
    std::vector<std::optional<RegionRoute>> routes(regions.size());
    detail::parallel_for(regions.size(), cfg.threads, g.node_count(), [&](std::size_t c, SearchWorkspace &ws) {
        attach_boundary_nodes(g, idx, regions[c]);
        try {
            routes[c] = region_shortest_path(g, regions[c], ws);
        } catch (const RegionDegenerateError &) {
        } catch (const NoPathError &) {
        }
    });
    r.timings.region_search = phase.seconds();

    phase = Stopwatch();
    std::vector<std::size_t> owner(lines.size());
    for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
        for (const auto m : clustering.clusters[c].members) owner[m] = c;
    }
    detail::parallel_for(lines.size(), cfg.threads, g.node_count(), [&](std::size_t k, SearchWorkspace &ws) {
        const std::size_t i = line_query[k];
        const std::size_t c = owner[k];
        auto &answer = r.answers[i];
        if (!routes[c]) {
            answer = cfg.fallback_on_degenerate_region ? exact_answer(g, queries[i], AnswerKind::fallback, ws)
                                                       : QueryAnswer{std::nullopt, AnswerKind::cluster, c};
            answer.cluster = c;
            return;
        }
        try {
            answer = {construct_path(g, queries[i], *routes[c], ws), AnswerKind::cluster, c};
        } catch (const NoPathError &) {
            answer = cfg.fallback_on_fragment_failure ? exact_answer(g, queries[i], AnswerKind::fallback, ws)
                                                      : QueryAnswer{std::nullopt, AnswerKind::cluster, c};
            answer.cluster = c;
        }
    });
    detail::parallel_for(exact_queries.size(), cfg.threads, g.node_count(), [&](std::size_t k, SearchWorkspace &ws) {
        r.answers[exact_queries[k]] = exact_answer(g, queries[exact_queries[k]], AnswerKind::fallback, ws);
    });
    r.timings.construction = phase.seconds();

    auto &stats = r.cluster_stats;
    stats.cluster_count = clustering.clusters.size();
    stats.first_pass_clusters = clustering.first_pass_clusters;
    stats.first_pass_unclustered = clustering.first_pass_unclustered;
    for (const auto &c : clustering.clusters) stats.sizes.push_back(c.member_count());

    r.timings.total = total.seconds();
    finish(r);
    return r;
}

BatchResult evaluate_gbpq(const RoadGraph &g, std::span<const PathQuery> queries, const EngineConfig &cfg) {
    const GridIndex idx(g, GridIndex::default_cell_size(g));
    return evaluate_gbpq(g, idx, queries, cfg);
}

double deviation_percent(double returned_total, double optimal_total) {
    if (optimal_total == 0.0) {
        if (returned_total == 0.0) return 0.0;
        throw std::domain_error("deviation against a zero optimal cost");
    }
    return 100.0 * (returned_total - optimal_total) / optimal_total;
}

void attach_deviation(BatchResult &result, const BatchResult &reference) {
    if (result.answers.size() != reference.answers.size())
        throw std::invalid_argument("result and reference differ in query count");
    result.per_query_deviation.assign(result.answers.size(), 0.0);
    for (std::size_t i = 0; i < result.answers.size(); ++i) {
        const auto &a = result.answers[i];
        const auto &b = reference.answers[i];
        if (!a.answered() || !b.answered()) continue;
        // A detour over a zero-cost optimum has no finite percentage.
        result.per_query_deviation[i] = (b.cost() == 0.0 && a.cost() > 0.0)
                                            ? std::numeric_limits<double>::infinity()
                                            : deviation_percent(a.cost(), b.cost());
    }
}

double aggregate_deviation(const BatchResult &result, const BatchResult &reference) {
    if (result.answers.size() != reference.answers.size())
        throw std::invalid_argument("result and reference differ in query count");
    double returned = 0.0, optimal = 0.0;
    for (std::size_t i = 0; i < result.answers.size(); ++i) {
        const auto &a = result.answers[i];
        const auto &b = reference.answers[i];
        if (a.answered() && b.answered()) {
            returned += a.cost();
            optimal += b.cost();
        }
    }
    return deviation_percent(returned, optimal);
}

}  // namespace gbpq
