#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "fixture.hpp"

using namespace gbpq;

namespace {

std::vector<PathQuery> random_pairs(std::size_t n) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(bench::network().node_count() - 1));
    std::vector<PathQuery> out(n);
    for (auto &q : out) q = {pick(rng), pick(rng)};
    return out;
}

void BM_AStar(benchmark::State &state) {
    const auto &g = bench::network();
    const auto pairs = random_pairs(256);
    SearchWorkspace ws(g.node_count());
    std::size_t i = 0;
    for (auto _ : state) {
        const auto &q = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(find_astar(g, q.source, q.dest, ws));
    }
}
BENCHMARK(BM_AStar);

void BM_Dijkstra(benchmark::State &state) {
    const auto &g = bench::network();
    const auto pairs = random_pairs(256);
    SearchWorkspace ws(g.node_count());
    std::size_t i = 0;
    for (auto _ : state) {
        const auto &q = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(find_dijkstra(g, q.source, q.dest, ws));
    }
}
BENCHMARK(BM_Dijkstra);

void BM_SnapGrid(benchmark::State &state) {
    const auto &idx = bench::network_index();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 10000);
    for (auto _ : state) benchmark::DoNotOptimize(idx.nearest({u(rng), u(rng)}));
}
BENCHMARK(BM_SnapGrid);

void BM_SnapLinearScan(benchmark::State &state) {
    const auto &g = bench::network();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 10000);
    for (auto _ : state) benchmark::DoNotOptimize(snap_to_node(g, {u(rng), u(rng)}));
}
BENCHMARK(BM_SnapLinearScan);

}  // namespace
