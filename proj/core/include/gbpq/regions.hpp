#pragma once

#include <cstddef>
#include <vector>

#include "gbpq/geometry.hpp"
#include "gbpq/road_graph.hpp"

namespace gbpq {

/// Source and destination MBRs of one cluster together with the nodes
/// through which a search can leave the source region and enter the
/// destination region. Each region acts as a single virtual node.
struct RegionPair {
    Rect source_mbr;
    Rect dest_mbr;
    std::vector<NodeId> exit_nodes;   // sorted
    std::vector<NodeId> entry_nodes;  // sorted
    std::size_t cluster_id{0};

    bool overlapping() const { return source_mbr.intersects(dest_mbr); }
};

/// Nodes inside `mbr` with at least one outgoing arc to a node outside it.
std::vector<NodeId> find_exit_nodes(const RoadGraph &g, const Rect &mbr);
std::vector<NodeId> find_exit_nodes(const RoadGraph &g, const GridIndex &idx, const Rect &mbr);

/// Nodes inside `mbr` with at least one incoming arc from a node outside it.
std::vector<NodeId> find_entry_nodes(const RoadGraph &g, const Rect &mbr);
std::vector<NodeId> find_entry_nodes(const RoadGraph &g, const GridIndex &idx, const Rect &mbr);

/// Fills exit_nodes and entry_nodes from the pair's MBRs.
void attach_boundary_nodes(const RoadGraph &g, const GridIndex &idx, RegionPair &rp);

}  // namespace gbpq
