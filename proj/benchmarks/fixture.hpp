#pragma once

#include <map>
#include <utility>

#include "gbpq/gbpq.hpp"

namespace gbpq::bench {

/// Shared ~20k-node synthetic network and its grid index.
inline const RoadGraph &network() {
    static const RoadGraph g = synthetic_road_network(SyntheticSpec{});
    return g;
}

inline const GridIndex &network_index() {
    static const GridIndex idx(network(), GridIndex::default_cell_size(network()));
    return idx;
}

inline const QuerySet &workload(Distribution d, std::size_t n) {
    static std::map<std::pair<int, std::size_t>, QuerySet> cache;
    const auto key = std::pair{static_cast<int>(d), n};
    auto it = cache.find(key);
    if (it == cache.end()) {
        WorkloadSpec s;
        s.n = n;
        s.distribution = d;
        it = cache.emplace(key, generate_workload(network(), network_index(), s)).first;
    }
    return it->second;
}

}  // namespace gbpq::bench
