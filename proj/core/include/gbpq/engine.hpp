#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbpq/clustering.hpp"
#include "gbpq/pathfinding.hpp"
#include "gbpq/road_graph.hpp"

namespace gbpq {

struct EngineConfig {
    ClusterParams cluster{};
    /// Answer queries of clusters with empty, overlapping or disconnected
    /// regions by exact search. When off they get a no-path marker.
    bool fallback_on_degenerate_region{true};
    /// Answer queries whose connecting fragments fail by exact search.
    bool fallback_on_fragment_failure{true};
    /// Workers for region searches and path construction; 1 = deterministic
    /// single-threaded mode.
    unsigned threads{1};
};

/// How a query's answer was produced.
enum class AnswerKind {
    naive,     ///< per-query exact search
    trivial,   ///< source == dest
    cluster,   ///< shared region route plus fragments
    fallback,  ///< exact search after a cluster or fragment failure
};

std::string to_string(AnswerKind k);

struct QueryAnswer {
    std::optional<RoutePath> path;  ///< empty = no path
    AnswerKind kind{AnswerKind::naive};
    std::optional<std::size_t> cluster;

    bool answered() const { return path.has_value(); }
    double cost() const { return path ? path->cost : -1.0; }
};

/// Wall-clock seconds per phase.
struct PhaseTimings {
    double qline{0.0};
    double clustering{0.0};
    double region_search{0.0};
    double construction{0.0};
    double total{0.0};
};

struct ClusterStats {
    std::size_t cluster_count{0};
    std::vector<std::size_t> sizes;
    std::size_t first_pass_clusters{0};
    std::size_t first_pass_unclustered{0};
};

struct BatchResult {
    std::vector<QueryAnswer> answers;
    /// Per-query deviation in percent from a reference run; filled by
    /// attach_deviation (zeros for a naive run).
    std::vector<double> per_query_deviation;
    PhaseTimings timings;
    ClusterStats cluster_stats;
    std::size_t fallback_count{0};
    std::size_t no_path_count{0};
};

/// Answers every query with its own A* search.
BatchResult evaluate_naive(const RoadGraph &g, std::span<const PathQuery> queries, unsigned threads = 1);

/// Group-based evaluation: Q-lines from node coordinates, clustering,
/// region pairs, one region search per cluster, then per-query fragments.
BatchResult evaluate_gbpq(const RoadGraph &g, const GridIndex &idx, std::span<const PathQuery> queries,
                          const EngineConfig &cfg = {});
BatchResult evaluate_gbpq(const RoadGraph &g, std::span<const PathQuery> queries, const EngineConfig &cfg = {});

/// 100 * (returned - optimal) / optimal; 0/0 is 0, x/0 throws.
double deviation_percent(double returned_total, double optimal_total);

/// Fills result.per_query_deviation against `reference` (query by query).
/// Queries unanswered in either run get 0.
void attach_deviation(BatchResult &result, const BatchResult &reference);

/// Deviation of the summed costs over queries answered in both runs.
double aggregate_deviation(const BatchResult &result, const BatchResult &reference);

}  // namespace gbpq
