#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gbpq/pathfinding.hpp"
#include "gbpq/road_graph.hpp"
#include "support/oracles.hpp"

using namespace gbpq;

namespace {

RoadGraph load_text(const std::string &co, const std::string &gr, DimacsStats *stats = nullptr) {
    std::istringstream c(co), g(gr);
    return load_graph(c, g, stats);
}

const char *kTwoNodes = "c two nodes\np aux sp co 2\nv 1 0 0\nv 2 3 4\n";

}  // namespace

TEST(LoadGraph, MinimalFile) {
    const auto g = load_text(kTwoNodes, "p sp 2 1\na 1 2 5\n");
    ASSERT_EQ(g.node_count(), 2u);
    ASSERT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.out_arcs(0)[0].head, 1u);
    EXPECT_DOUBLE_EQ(g.out_arcs(0)[0].weight, 5.0);
    EXPECT_TRUE(g.out_arcs(1).empty());
    EXPECT_EQ(g.in_arcs(1)[0].head, 0u);
    EXPECT_EQ(g.external_id(1), 2);
}

TEST(LoadGraph, EmptyArcFileGivesNoPaths) {
    const auto g = load_text(kTwoNodes, "");
    EXPECT_EQ(g.edge_count(), 0u);
    SearchWorkspace ws(g.node_count());
    EXPECT_FALSE(find_astar(g, 0, 1, ws).has_value());
    EXPECT_THROW(astar(g, 1, 0), NoPathError);
}

TEST(LoadGraph, DuplicateArcsAreKept) {
    const std::string gr = "p sp 2 3\na 1 2 5\na 1 2 5\na 1 2 7\n";
    DimacsStats stats;
    const auto g = load_text(kTwoNodes, gr, &stats);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(stats.declared_arcs, 3u);
    EXPECT_DOUBLE_EQ(g.arc_weight(0, 1), 5.0);

    std::ostringstream co_out, gr_out;
    write_dimacs(g, co_out, gr_out);
    const auto again = load_text(co_out.str(), gr_out.str(), &stats);
    EXPECT_EQ(again.edge_count(), 3u);
    EXPECT_EQ(stats.declared_arcs, 3u);
    EXPECT_EQ(stats.declared_nodes, 2u);
}

TEST(LoadGraph, RoundTripMatchesProblemLine) {
    const auto g = oracle::random_euclidean_graph(200, 4, 11);
    std::ostringstream co, gr;
    write_dimacs(g, co, gr, "round trip");
    DimacsStats stats;
    const auto again = load_text(co.str(), gr.str(), &stats);
    EXPECT_EQ(stats.declared_nodes, g.node_count());
    EXPECT_EQ(stats.declared_arcs, g.edge_count());
    ASSERT_EQ(again.node_count(), g.node_count());
    ASSERT_EQ(again.edge_count(), g.edge_count());
    for (NodeId n = 0; n < g.node_count(); ++n) {
        EXPECT_EQ(again.coord(n), g.coord(n));
        ASSERT_EQ(again.out_arcs(n).size(), g.out_arcs(n).size());
    }
}

TEST(LoadGraph, ExternalIdsAreRemapped) {
    const auto g = load_text("v 10 0 0\nv 7 1 0\nv 3 2 0\n", "a 3 10 2\na 10 7 1\n");
    ASSERT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.external_id(0), 10);
    EXPECT_EQ(g.external_id(2), 3);
    EXPECT_EQ(g.out_arcs(2)[0].head, 0u);
    EXPECT_EQ(g.out_arcs(0)[0].head, 1u);
}

TEST(LoadGraph, MalformedLineReportsLineNumber) {
    try {
        load_text("v 1 0 0\nv 2 x 0\n", "");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    try {
        load_text(kTwoNodes, "c\na 1 2 5\na 1 9 5\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(load_text(kTwoNodes, "a 1 2 -1\n"), ParseError);
    EXPECT_THROW(load_text("v 1 0 0\nv 1 2 2\n", ""), ParseError);
    EXPECT_THROW(load_text(kTwoNodes, "x 1 2\n"), ParseError);
}

TEST(HeuristicScale, DerivedFromArcs) {
    const std::vector<Point2D> coords{{0, 0}, {10, 0}, {10, 10}};
    const std::vector<EdgeInput> edges{{0, 1, 20}, {1, 2, 5}};
    EXPECT_DOUBLE_EQ(admissible_heuristic_scale(coords, edges), 0.5);
    const RoadGraph g(coords, edges, -1.0);
    EXPECT_DOUBLE_EQ(g.heuristic_scale(), 0.5);
    const std::vector<EdgeInput> slow{{0, 1, 30}};
    EXPECT_DOUBLE_EQ(admissible_heuristic_scale(coords, slow), 1.0);
}

TEST(RoadGraph, RejectsBadInput) {
    const std::vector<Point2D> coords{{0, 0}, {1, 0}};
    const std::vector<EdgeInput> bad_node{{0, 2, 1}};
    const std::vector<EdgeInput> bad_weight{{0, 1, -1}};
    EXPECT_THROW(RoadGraph(coords, bad_node), std::invalid_argument);
    EXPECT_THROW(RoadGraph(coords, bad_weight), std::invalid_argument);
}

TEST(Snap, ExactNodeAndTieBreak) {
    std::vector<Point2D> coords(10);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = {100.0 + static_cast<double>(i) * 37, 50.0};
    coords[3] = {0, 0};
    coords[7] = {10, 0};
    const RoadGraph g(coords, {});
    const GridIndex idx = build_grid(g, 4.0);
    EXPECT_EQ(snap_to_node(g, idx, {10, 0}), 7u);
    EXPECT_EQ(snap_to_node(g, idx, coords[5]), 5u);
    EXPECT_EQ(snap_to_node(g, idx, {5, 3}), 3u);
    EXPECT_EQ(snap_to_node(g, {5, 3}), 3u);
}

TEST(Snap, EmptyGraphThrows) {
    const RoadGraph g;
    const GridIndex idx(g, 1.0);
    EXPECT_ANY_THROW(snap_to_node(g, idx, {0, 0}));
    EXPECT_ANY_THROW(snap_to_node(g, {0, 0}));
}

TEST(BuildGrid, RejectsNonPositiveCell) {
    const auto g = oracle::random_euclidean_graph(5, 1, 1);
    EXPECT_THROW(build_grid(g, 0.0), std::invalid_argument);
    EXPECT_THROW(build_grid(g, -3.0), std::invalid_argument);
}

TEST(BuildGrid, SingleNodeAnswersEverything) {
    const RoadGraph g({{5, 5}}, {});
    for (const double cell : {0.001, 1.0, 1e6}) {
        const auto idx = build_grid(g, cell);
        EXPECT_EQ(snap_to_node(g, idx, {-1e5, 3e4}), 0u);
        EXPECT_EQ(snap_to_node(g, idx, {5, 5}), 0u);
    }
}

TEST(BuildGrid, AgreesWithLinearScanOnRandomNodes) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-100, 1100);
    const auto g = oracle::random_euclidean_graph(100, 0, 3);
    for (const double cell : {3.0, 25.0, GridIndex::default_cell_size(g), 5000.0}) {
        const auto idx = build_grid(g, cell);
        for (int i = 0; i < 1000; ++i) {
            const Point2D p{u(rng), u(rng)};
            ASSERT_EQ(snap_to_node(g, idx, p), oracle::linear_scan_snap(g, p)) << "cell " << cell;
        }
    }
}

TEST(BuildGrid, AgreesWithLinearScanOnCollinearNodes) {
    std::vector<Point2D> coords;
    for (int i = 0; i < 200; ++i) coords.push_back({static_cast<double>((i * 37) % 200) * 3.0, 7.0});
    const RoadGraph g(coords, {});
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-50, 650);
    for (const double cell : {1.0, GridIndex::default_cell_size(g), 40.0}) {
        const auto idx = build_grid(g, cell);
        for (int i = 0; i < 1000; ++i) {
            const Point2D p{u(rng), u(rng) / 10};
            ASSERT_EQ(snap_to_node(g, idx, p), oracle::linear_scan_snap(g, p));
        }
    }
}

TEST(BuildGrid, SnapPropertyOnIntegerLattice) {
    // Integer coordinates and probes produce many exact ties.
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> c(0, 40);
    std::vector<Point2D> coords(300);
    for (auto &p : coords) p = {static_cast<double>(c(rng)), static_cast<double>(c(rng))};
    const RoadGraph g(coords, {});
    std::uniform_int_distribution<int> probe(-5, 45);
    for (const double cell : {0.5, 1.0, 3.0, 7.5}) {
        const auto idx = build_grid(g, cell);
        for (int i = 0; i < 3000; ++i) {
            const Point2D p{static_cast<double>(probe(rng)) + 0.5 * (i % 2), static_cast<double>(probe(rng))};
            ASSERT_EQ(snap_to_node(g, idx, p), oracle::linear_scan_snap(g, p));
        }
    }
}

TEST(BuildGrid, EveryNodeInExactlyOneCell) {
    const auto g = oracle::random_euclidean_graph(500, 0, 8);
    const auto idx = build_grid(g, 17.0);
    const auto all = idx.nodes_in(g.bounding_box());
    ASSERT_EQ(all.size(), g.node_count());
    for (NodeId n = 0; n < g.node_count(); ++n) EXPECT_EQ(all[n], n);
    const Rect r{100, 200, 400, 350};
    std::vector<NodeId> want;
    for (NodeId n = 0; n < g.node_count(); ++n)
        if (oracle::inside(r, g.coord(n))) want.push_back(n);
    EXPECT_EQ(idx.nodes_in(r), want);
}
