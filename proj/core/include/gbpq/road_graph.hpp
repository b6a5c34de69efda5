#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbpq/geometry.hpp"

namespace gbpq {

using NodeId = std::uint32_t;
using Weight = double;

inline constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);

struct Arc {
    NodeId head;
    Weight weight;
};

struct PathQuery {
    NodeId source{kInvalidNode};
    NodeId dest{kInvalidNode};

    friend bool operator==(const PathQuery &, const PathQuery &) = default;
};

struct EdgeInput {
    NodeId tail;
    NodeId head;
    Weight weight;
};

/// Directed, weighted road network with planar node coordinates. Built once
/// and never mutated; forward and reverse adjacency are kept in CSR form.
class RoadGraph {
public:
    RoadGraph() = default;

    /// Nodes are numbered by their position in `coords`. Parallel arcs are
    /// kept. `heuristic_scale` must satisfy weight >= scale * euclidean for
    /// every arc; pass a negative value to derive it from the arcs.
    RoadGraph(std::vector<Point2D> coords, std::span<const EdgeInput> edges,
              double heuristic_scale = 1.0, std::vector<std::int64_t> external_ids = {});

    std::size_t node_count() const { return coords_.size(); }
    std::size_t edge_count() const { return fwd_arcs_.size(); }
    bool empty() const { return coords_.empty(); }

    Point2D coord(NodeId n) const { return coords_[n]; }
    std::span<const Point2D> coords() const { return coords_; }

    std::span<const Arc> out_arcs(NodeId n) const {
        return {fwd_arcs_.data() + fwd_offsets_[n], fwd_arcs_.data() + fwd_offsets_[n + 1]};
    }
    /// Arcs (v, n) with `Arc::head` holding the tail v.
    std::span<const Arc> in_arcs(NodeId n) const {
        return {rev_arcs_.data() + rev_offsets_[n], rev_arcs_.data() + rev_offsets_[n + 1]};
    }

    /// Largest k with weight >= k * euclidean on every arc, capped at 1.
    double heuristic_scale() const { return heuristic_scale_; }
    Rect bounding_box() const { return bbox_; }
    bool valid(NodeId n) const { return n < coords_.size(); }

    /// Cheapest arc u -> v, or a negative value when none exists.
    Weight arc_weight(NodeId u, NodeId v) const;

    /// Identifier the node carried in its source file (DIMACS ids are
    /// 1-based); defaults to id + 1.
    std::int64_t external_id(NodeId n) const {
        return external_ids_.empty() ? static_cast<std::int64_t>(n) + 1 : external_ids_[n];
    }

private:
    std::vector<Point2D> coords_;
    std::vector<std::size_t> fwd_offsets_{0};
    std::vector<Arc> fwd_arcs_;
    std::vector<std::size_t> rev_offsets_{0};
    std::vector<Arc> rev_arcs_;
    std::vector<std::int64_t> external_ids_;
    double heuristic_scale_{1.0};
    Rect bbox_{};
};

/// Largest k with w >= k * euclidean(u, v) over all arcs, capped at 1.
double admissible_heuristic_scale(std::span<const Point2D> coords, std::span<const EdgeInput> edges);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &source, std::size_t line, const std::string &message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct DimacsStats {
    std::size_t declared_nodes{0};
    std::size_t declared_arcs{0};
};

/// Reads a DIMACS coordinate stream ("v id x y") and arc stream
/// ("a u v w"). Comment ("c") and problem ("p") lines are accepted; node ids
/// are remapped to a dense range in order of first appearance in the
/// coordinate stream.
RoadGraph load_graph(std::istream &coords, std::istream &arcs, DimacsStats *stats = nullptr);
RoadGraph load_graph_files(const std::string &co_path, const std::string &gr_path,
                           DimacsStats *stats = nullptr);

/// Writes the graph back in DIMACS form using its external ids.
void write_dimacs(const RoadGraph &g, std::ostream &coords, std::ostream &arcs,
                  const std::string &comment = {});

/// Uniform bucket grid over node coordinates for nearest-node lookup and
/// rectangle range queries.
class GridIndex {
public:
    GridIndex(const RoadGraph &g, double cell_size);

    /// Cell size = bounding-box diagonal / 256 (1 for a point-sized graph).
    static double default_cell_size(const RoadGraph &g);

    double cell_size() const { return cell_size_; }

    /// Node closest to p; ties go to the smaller id.
    NodeId nearest(Point2D p) const;

    /// All nodes whose coordinates fall inside r (boundary inclusive), sorted.
    std::vector<NodeId> nodes_in(const Rect &r) const;

    std::size_t cell_of(NodeId n) const;

private:
    long clamp_col(double x) const;
    long clamp_row(double y) const;
    void scan_cell(long col, long row, Point2D p, double &best_sq, NodeId &best) const;

    const RoadGraph *graph_;
    double cell_size_;
    Point2D origin_;
    long cols_{1};
    long rows_{1};
    std::vector<std::size_t> cell_offsets_;
    std::vector<NodeId> cell_nodes_;
};

/// Throws std::invalid_argument unless cell_size > 0.
GridIndex build_grid(const RoadGraph &g, double cell_size);

/// Nearest node through the grid index.
NodeId snap_to_node(const RoadGraph &g, const GridIndex &idx, Point2D p);
/// Nearest node by exhaustive scan.
NodeId snap_to_node(const RoadGraph &g, Point2D p);

}  // namespace gbpq
