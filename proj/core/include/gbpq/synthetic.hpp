#pragma once

#include <cstdint>

#include "gbpq/road_graph.hpp"

namespace gbpq {

/// Road-like test network: a jittered square lattice with integer
/// coordinates spanning [0, side]^2, a random spanning tree of lattice links
/// plus a share of the remaining links and some diagonals. Every link is a
/// pair of opposite arcs whose integer weight is the rounded-up length
/// stretched by a random detour factor, so weights never undercut the
/// straight-line distance.
struct SyntheticSpec {
    std::size_t nodes{20000};
    double side{10000.0};
    double jitter{0.35};          ///< fraction of the lattice spacing
    double keep_fraction{0.75};   ///< share of non-tree lattice links kept
    double diagonal_fraction{0.08};
    double max_detour{0.3};       ///< weight = ceil(length * (1 + U(0, max_detour)))
    std::uint64_t seed{1};
};

RoadGraph synthetic_road_network(const SyntheticSpec &spec);

}  // namespace gbpq
