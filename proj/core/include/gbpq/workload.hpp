#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbpq/geometry.hpp"
#include "gbpq/road_graph.hpp"

namespace gbpq {

enum class Distribution { gaussian, zipf };

std::string to_string(Distribution d);
Distribution parse_distribution(const std::string &name);

/// Workload parameters. `omega` and all distances are measured in the
/// normalized space, whose side is `normalized_side` units.
struct WorkloadSpec {
    std::size_t n{1000};
    double omega{100.0};
    double dc{0.4};
    Distribution distribution{Distribution::gaussian};
    std::size_t queries_per_group{50};
    std::uint64_t seed{1};
    /// Region of the graph to sample from; defaults to the graph's bounding
    /// box, extended to a square.
    std::optional<Rect> space;
    double normalized_side{10000.0};

    void validate() const;
    /// Smallest allowed straight-line distance between a query's endpoints:
    /// dc * 100 * sqrt(omega).
    double min_query_distance() const;
};

/// Maps normalized coordinates u in [0, side]^2 onto graph coordinates
/// origin + u * scale.
struct SpaceFrame {
    Point2D origin{};
    double scale{1.0};
    double side{10000.0};

    Point2D to_graph(Point2D u) const { return origin + u * scale; }
    Point2D to_normalized(Point2D p) const { return (p - origin) * (1.0 / scale); }
};

SpaceFrame make_frame(const RoadGraph &g, const WorkloadSpec &spec);

struct QuerySet {
    std::vector<PathQuery> queries;
    /// Pre-snap points, in graph coordinates, one per query.
    std::vector<QLine> points;
    WorkloadSpec spec;
    SpaceFrame frame;

    std::size_t size() const { return queries.size(); }
};

class WorkloadError : public std::runtime_error {
public:
    explicit WorkloadError(const std::string &what) : std::runtime_error(what) {}
};

/// Draws groups of `queries_per_group` queries between two random windows
/// of side `omega` whose centres lie at least the minimum distance apart,
/// places points with the chosen distribution, redraws point pairs closer
/// than the minimum distance and snaps each point to its nearest node.
QuerySet generate_workload(const RoadGraph &g, const GridIndex &idx, const WorkloadSpec &spec);
QuerySet generate_workload(const RoadGraph &g, const WorkloadSpec &spec);

/// Text format: '#' header lines echoing the spec, then one
/// "q <src> <dst> <sx> <sy> <dx> <dy>" line per query. Node ids are the
/// graph's dense ids; doubles are written in shortest round-trip form.
void save_queries(const QuerySet &qs, std::ostream &out);
void save_queries(const QuerySet &qs, const std::string &path);
QuerySet load_queries(std::istream &in, const std::string &name = "queries");
QuerySet load_queries(const std::string &path);

}  // namespace gbpq
