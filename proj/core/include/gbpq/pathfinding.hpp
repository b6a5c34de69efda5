#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbpq/regions.hpp"
#include "gbpq/road_graph.hpp"

namespace gbpq {

struct RoutePath {
    std::vector<NodeId> nodes;
    Weight cost{0.0};

    NodeId front() const { return nodes.front(); }
    NodeId back() const { return nodes.back(); }
};

/// Route between the two virtual region nodes of a RegionPair.
struct RegionRoute {
    RoutePath path;
    NodeId exit_used{kInvalidNode};
    NodeId entry_used{kInvalidNode};
};

class NoPathError : public std::runtime_error {
public:
    NoPathError(NodeId s, NodeId d)
        : std::runtime_error("no path from node " + std::to_string(s) + " to node " + std::to_string(d)) {}
    explicit NoPathError(const std::string &what) : std::runtime_error(what) {}
};

class RegionDegenerateError : public std::runtime_error {
public:
    explicit RegionDegenerateError(const std::string &what) : std::runtime_error(what) {}
};

/// Per-search scratch state sized to a graph. Reset is O(1) amortized via
/// generation stamps, so one workspace can serve many consecutive searches.
/// Not thread-safe; give each worker its own.
class SearchWorkspace {
public:
    explicit SearchWorkspace(std::size_t node_count);

    std::size_t capacity() const { return dist_.size(); }
    /// Nodes popped from the frontier by the last search (re-expansions count).
    std::size_t last_settled() const { return settled_; }

private:
    friend class BestFirstSearch;

    struct Entry {
        double key;
        NodeId node;
        double dist;
    };

    std::vector<double> dist_;
    std::vector<NodeId> parent_;
    std::vector<std::uint32_t> seen_;
    std::vector<std::uint32_t> target_;
    std::uint32_t generation_{0};
    std::vector<Entry> heap_;
    std::size_t settled_{0};
};

std::optional<RoutePath> find_astar(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws);
std::optional<RoutePath> find_dijkstra(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws);

/// A* with h(u) = heuristic_scale * euclidean(u, d). Throws NoPathError.
RoutePath astar(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws);
RoutePath astar(const RoadGraph &g, NodeId s, NodeId d);

/// Plain Dijkstra; the exact reference for astar.
RoutePath dijkstra(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws);
RoutePath dijkstra(const RoadGraph &g, NodeId s, NodeId d);

/// Cheapest route from any exit node to any entry node of `rp`, found with a
/// single search from a zero-cost super source to a zero-cost super target.
/// Guided by the distance to the destination MBR.
/// Throws RegionDegenerateError when a boundary set is empty or the MBRs
/// overlap, NoPathError when no entry node is reachable.
RegionRoute region_shortest_path(const RoadGraph &g, const RegionPair &rp, SearchWorkspace &ws);
RegionRoute region_shortest_path(const RoadGraph &g, const RegionPair &rp);

/// Joins source -> exit_used, the shared region route, and
/// entry_used -> dest. Fragments are exact searches on the whole graph.
/// Throws NoPathError when a fragment cannot be built.
RoutePath construct_path(const RoadGraph &g, const PathQuery &q, const RegionRoute &sp, SearchWorkspace &ws);
RoutePath construct_path(const RoadGraph &g, const PathQuery &q, const RegionRoute &sp);

/// Appends `tail` to `head`, merging the shared junction node.
void append_path(RoutePath &head, const RoutePath &tail);

struct PathCheck {
    bool ok{true};
    std::string reason;

    explicit operator bool() const { return ok; }
};

/// Checks that `path` runs from s to d over existing arcs and that its cost
/// equals the sum of the cheapest arc between each consecutive pair.
PathCheck validate_path(const RoadGraph &g, const RoutePath &path, NodeId s, NodeId d);

}  // namespace gbpq
