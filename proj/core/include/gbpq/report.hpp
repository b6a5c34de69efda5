#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbpq/engine.hpp"

namespace gbpq {

/// Result CSV, schema version 1. Header row:
///
///   query,source,dest,status,cost,deviation_percent,answer,cluster,path
///
/// `status` is "ok" or "no_path"; `cost`, `deviation_percent` and `cluster`
/// are empty when not applicable; `path` lists node ids separated by spaces.
/// Rows carry no timing, so a deterministic run yields identical bytes.
inline constexpr int kResultSchemaVersion = 1;
inline constexpr const char *kResultHeader = "query,source,dest,status,cost,deviation_percent,answer,cluster,path";

struct ResultRow {
    std::size_t query{0};
    PathQuery endpoints;
    std::optional<RoutePath> path;
    std::optional<double> deviation_percent;
    std::string answer;
    std::optional<std::size_t> cluster;
};

/// `with_deviation` controls whether result.per_query_deviation is written.
void write_result_csv(std::ostream &out, std::span<const PathQuery> queries, const BatchResult &result,
                      bool with_deviation);
std::vector<ResultRow> read_result_csv(std::istream &in, const std::string &name = "result");

/// Run summary as "key,value" rows: counts, cluster statistics and phase
/// timings in seconds.
void write_summary_csv(std::ostream &out, const std::string &mode, const BatchResult &result,
                       std::optional<double> aggregate_deviation = std::nullopt);
std::map<std::string, std::string> read_summary_csv(std::istream &in, const std::string &name = "summary");

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace gbpq
