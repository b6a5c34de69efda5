#include "gbpq/regions.hpp"

#include <algorithm>

namespace gbpq {

namespace {

template <typename Arcs>
std::vector<NodeId> boundary_nodes(const RoadGraph &g, const std::vector<NodeId> &inside, const Rect &mbr,
                                   Arcs arcs_of) {
    std::vector<NodeId> out;
    for (const NodeId u : inside) {
        const auto arcs = arcs_of(u);
        if (std::any_of(arcs.begin(), arcs.end(), [&](const Arc &a) { return !mbr.contains(g.coord(a.head)); }))
            out.push_back(u);
    }
    return out;
}

std::vector<NodeId> nodes_inside(const RoadGraph &g, const Rect &mbr) {
    std::vector<NodeId> inside;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (mbr.contains(g.coord(u))) inside.push_back(u);
    }
    return inside;
}

}  // namespace

std::vector<NodeId> find_exit_nodes(const RoadGraph &g, const Rect &mbr) {
    return boundary_nodes(g, nodes_inside(g, mbr), mbr, [&](NodeId u) { return g.out_arcs(u); });
}

std::vector<NodeId> find_exit_nodes(const RoadGraph &g, const GridIndex &idx, const Rect &mbr) {
    return boundary_nodes(g, idx.nodes_in(mbr), mbr, [&](NodeId u) { return g.out_arcs(u); });
}

std::vector<NodeId> find_entry_nodes(const RoadGraph &g, const Rect &mbr) {
    return boundary_nodes(g, nodes_inside(g, mbr), mbr, [&](NodeId u) { return g.in_arcs(u); });
}

std::vector<NodeId> find_entry_nodes(const RoadGraph &g, const GridIndex &idx, const Rect &mbr) {
    return boundary_nodes(g, idx.nodes_in(mbr), mbr, [&](NodeId u) { return g.in_arcs(u); });
}

void attach_boundary_nodes(const RoadGraph &g, const GridIndex &idx, RegionPair &rp) {
    rp.exit_nodes = find_exit_nodes(g, idx, rp.source_mbr);
    rp.entry_nodes = find_entry_nodes(g, idx, rp.dest_mbr);
}

}  // namespace gbpq
