#include "gbpq/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace gbpq {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

RoadGraph synthetic_road_network(const SyntheticSpec &spec) {
    if (spec.nodes < 4) throw std::invalid_argument("synthetic network needs at least 4 nodes");
    if (!(spec.side > 0.0)) throw std::invalid_argument("side must be positive");

    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(spec.nodes))));
    const double spacing = spec.side / static_cast<double>(k - 1);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> jitter(-spec.jitter * spacing, spec.jitter * spacing);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto id = [k](std::size_t col, std::size_t row) { return static_cast<NodeId>(row * k + col); };
    std::vector<Point2D> coords(k * k);
    for (std::size_t row = 0; row < k; ++row) {
        for (std::size_t col = 0; col < k; ++col) {
            const bool corner = (row == 0 || row == k - 1) && (col == 0 || col == k - 1);
            double x = static_cast<double>(col) * spacing;
            double y = static_cast<double>(row) * spacing;
            if (!corner) {
                x += jitter(rng);
                y += jitter(rng);
            }
            coords[id(col, row)] = {std::clamp(std::round(x), 0.0, spec.side), std::clamp(std::round(y), 0.0, spec.side)};
        }
    }

    struct Link {
        NodeId a, b;
    };
    std::vector<Link> lattice;
    for (std::size_t row = 0; row < k; ++row) {
        for (std::size_t col = 0; col < k; ++col) {
            if (col + 1 < k) lattice.push_back({id(col, row), id(col + 1, row)});
            if (row + 1 < k) lattice.push_back({id(col, row), id(col, row + 1)});
        }
    }
    std::shuffle(lattice.begin(), lattice.end(), rng);

    std::vector<Link> kept;
    DisjointSets sets(coords.size());
    std::vector<Link> rest;
    for (const auto &l : lattice) {
        if (sets.unite(l.a, l.b)) kept.push_back(l);
        else rest.push_back(l);
    }
    for (const auto &l : rest) {
        if (unit(rng) < spec.keep_fraction) kept.push_back(l);
    }
    for (std::size_t row = 0; row + 1 < k; ++row) {
        for (std::size_t col = 0; col + 1 < k; ++col) {
            if (unit(rng) >= spec.diagonal_fraction) continue;
            if (unit(rng) < 0.5) kept.push_back({id(col, row), id(col + 1, row + 1)});
            else kept.push_back({id(col + 1, row), id(col, row + 1)});
        }
    }

    std::vector<EdgeInput> edges;
    edges.reserve(kept.size() * 2);
    for (const auto &l : kept) {
        const double len = euclidean(coords[l.a], coords[l.b]);
        const double w = std::max(1.0, std::ceil(len * (1.0 + spec.max_detour * unit(rng))));
        edges.push_back({l.a, l.b, w});
        edges.push_back({l.b, l.a, w});
    }
    return RoadGraph(std::move(coords), edges, -1.0);
}

}  // namespace gbpq
