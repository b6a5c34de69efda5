#include "gbpq/pathfinding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gbpq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SearchWorkspace::SearchWorkspace(std::size_t node_count)
    : dist_(node_count, kInf), parent_(node_count, kInvalidNode), seen_(node_count, 0), target_(node_count, 0) {}

// Label-correcting best-first search over a workspace. Stale heap entries
// are skipped lazily; a node whose distance improves after it was popped is
// expanded again, so the result stays exact even if the heuristic is only
// admissible up to rounding.
class BestFirstSearch {
public:
    BestFirstSearch(const RoadGraph &g, SearchWorkspace &ws) : g_(g), ws_(ws) {
        if (ws_.capacity() < g.node_count()) throw std::invalid_argument("search workspace smaller than graph");
        if (++ws_.generation_ == 0) {
            std::fill(ws_.seen_.begin(), ws_.seen_.end(), 0);
            std::fill(ws_.target_.begin(), ws_.target_.end(), 0);
            ws_.generation_ = 1;
        }
        ws_.heap_.clear();
        ws_.settled_ = 0;
    }

    void mark_target(NodeId n) { ws_.target_[n] = ws_.generation_; }

    double dist(NodeId n) const { return ws_.seen_[n] == ws_.generation_ ? ws_.dist_[n] : kInf; }

    /// Runs until the first target is settled; returns it, or kInvalidNode.
    template <typename Heuristic>
    NodeId run(std::span<const NodeId> sources, Heuristic &&h) {
        for (const NodeId s : sources) improve(s, 0.0, kInvalidNode, h(s));
        auto &heap = ws_.heap_;
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), later);
            const auto top = heap.back();
            heap.pop_back();
            if (top.dist > ws_.dist_[top.node]) continue;
            ++ws_.settled_;
            if (ws_.target_[top.node] == ws_.generation_) return top.node;
            for (const Arc &a : g_.out_arcs(top.node)) {
                const double nd = top.dist + a.weight;
                if (nd < dist(a.head)) improve(a.head, nd, top.node, nd + h(a.head));
            }
        }
        return kInvalidNode;
    }

    RoutePath extract(NodeId target) const {
        RoutePath path;
        path.cost = dist(target);
        for (NodeId n = target; n != kInvalidNode; n = ws_.parent_[n]) path.nodes.push_back(n);
        std::reverse(path.nodes.begin(), path.nodes.end());
        return path;
    }

private:
    using Entry = SearchWorkspace::Entry;

    // Heap order: smaller key first, then smaller node id.
    static bool later(const Entry &a, const Entry &b) {
        return a.key > b.key || (a.key == b.key && a.node > b.node);
    }

    void improve(NodeId n, double d, NodeId parent, double key) {
        ws_.seen_[n] = ws_.generation_;
        ws_.dist_[n] = d;
        ws_.parent_[n] = parent;
        ws_.heap_.push_back({key, n, d});
        std::push_heap(ws_.heap_.begin(), ws_.heap_.end(), later);
    }

    const RoadGraph &g_;
    SearchWorkspace &ws_;
};

namespace {

void check_nodes(const RoadGraph &g, NodeId s, NodeId d) {
    if (!g.valid(s) || !g.valid(d)) throw std::out_of_range("query node outside the graph");
}

template <typename Heuristic>
std::optional<RoutePath> point_to_point(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws, Heuristic &&h) {
    check_nodes(g, s, d);
    BestFirstSearch search(g, ws);
    search.mark_target(d);
    const NodeId source[] = {s};
    const NodeId reached = search.run(source, h);
    if (reached == kInvalidNode) return std::nullopt;
    return search.extract(reached);
}

}  // namespace

std::optional<RoutePath> find_astar(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws) {
    check_nodes(g, s, d);
    const Point2D goal = g.coord(d);
    const double scale = g.heuristic_scale();
    return point_to_point(g, s, d, ws, [&](NodeId u) { return scale * euclidean(g.coord(u), goal); });
}

std::optional<RoutePath> find_dijkstra(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws) {
    return point_to_point(g, s, d, ws, [](NodeId) { return 0.0; });
}

RoutePath astar(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws) {
    auto path = find_astar(g, s, d, ws);
    if (!path) throw NoPathError(s, d);
    return std::move(*path);
}

RoutePath astar(const RoadGraph &g, NodeId s, NodeId d) {
    SearchWorkspace ws(g.node_count());
    return astar(g, s, d, ws);
}

RoutePath dijkstra(const RoadGraph &g, NodeId s, NodeId d, SearchWorkspace &ws) {
    auto path = find_dijkstra(g, s, d, ws);
    if (!path) throw NoPathError(s, d);
    return std::move(*path);
}

RoutePath dijkstra(const RoadGraph &g, NodeId s, NodeId d) {
    SearchWorkspace ws(g.node_count());
    return dijkstra(g, s, d, ws);
}

RegionRoute region_shortest_path(const RoadGraph &g, const RegionPair &rp, SearchWorkspace &ws) {
    if (rp.exit_nodes.empty()) throw RegionDegenerateError("source region has no exit nodes");
    if (rp.entry_nodes.empty()) throw RegionDegenerateError("destination region has no entry nodes");
    if (rp.overlapping()) throw RegionDegenerateError("source and destination regions overlap");

    BestFirstSearch search(g, ws);
    for (const NodeId t : rp.entry_nodes) search.mark_target(t);
    const double scale = g.heuristic_scale();
    const Rect goal = rp.dest_mbr;
    const NodeId reached =
        search.run(rp.exit_nodes, [&](NodeId u) { return scale * goal.distance_to(g.coord(u)); });
    if (reached == kInvalidNode) throw NoPathError("no route between the regions of cluster " + std::to_string(rp.cluster_id));

    RegionRoute route;
    route.path = search.extract(reached);
    route.exit_used = route.path.front();
    route.entry_used = reached;
    return route;
}

RegionRoute region_shortest_path(const RoadGraph &g, const RegionPair &rp) {
    SearchWorkspace ws(g.node_count());
    return region_shortest_path(g, rp, ws);
}

void append_path(RoutePath &head, const RoutePath &tail) {
    if (tail.nodes.empty()) return;
    auto from = tail.nodes.begin();
    if (!head.nodes.empty() && head.nodes.back() == tail.nodes.front()) ++from;
    head.nodes.insert(head.nodes.end(), from, tail.nodes.end());
    head.cost += tail.cost;
}

RoutePath construct_path(const RoadGraph &g, const PathQuery &q, const RegionRoute &sp, SearchWorkspace &ws) {
    auto first = find_astar(g, q.source, sp.exit_used, ws);
    if (!first) throw NoPathError(q.source, sp.exit_used);
    auto last = find_astar(g, sp.entry_used, q.dest, ws);
    if (!last) throw NoPathError(sp.entry_used, q.dest);
    RoutePath out = std::move(*first);
    append_path(out, sp.path);
    append_path(out, *last);
    return out;
}

RoutePath construct_path(const RoadGraph &g, const PathQuery &q, const RegionRoute &sp) {
    SearchWorkspace ws(g.node_count());
    return construct_path(g, q, sp, ws);
}

PathCheck validate_path(const RoadGraph &g, const RoutePath &path, NodeId s, NodeId d) {
    auto fail = [](std::string why) { return PathCheck{false, std::move(why)}; };
    if (path.nodes.empty()) return fail("empty path");
    for (const NodeId n : path.nodes) {
        if (!g.valid(n)) return fail("node " + std::to_string(n) + " not in graph");
    }
    if (path.front() != s) return fail("path starts at " + std::to_string(path.front()) + ", expected " + std::to_string(s));
    if (path.back() != d) return fail("path ends at " + std::to_string(path.back()) + ", expected " + std::to_string(d));
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        const Weight w = g.arc_weight(path.nodes[i], path.nodes[i + 1]);
        if (w < 0.0)
            return fail("no arc " + std::to_string(path.nodes[i]) + " -> " + std::to_string(path.nodes[i + 1]));
        sum += w;
    }
    if (std::abs(sum - path.cost) > 1e-9 * std::max(1.0, std::abs(sum)))
        return fail("cost " + std::to_string(path.cost) + " differs from arc sum " + std::to_string(sum));
    return {};
}

}  // namespace gbpq
