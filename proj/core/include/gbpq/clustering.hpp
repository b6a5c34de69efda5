#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gbpq/geometry.hpp"
#include "gbpq/regions.hpp"

namespace gbpq {

struct ClusterParams {
    double delta{80.0};  ///< half side of the influence squares
    double psi{160.0};   ///< admission threshold on qline_distance
    std::size_t mu{30};  ///< minimum size of a first-pass cluster
    DistanceWeights weights{};

    /// Throws std::invalid_argument when out of range.
    void validate() const;
};

struct Cluster {
    std::vector<std::size_t> members;  ///< indices into the input lines
    QLine representative;
    bool first_pass{true};

    std::size_t member_count() const { return members.size(); }
};

struct ClusteringResult {
    std::vector<Cluster> clusters;
    std::size_t first_pass_clusters{0};
    /// Lines not placed in a cluster by the first pass.
    std::size_t first_pass_unclustered{0};
};

/// Componentwise mean of sources and of destinations.
QLine representative_qline(std::span<const QLine> lines);

/// Moving average (r * n + line) / (n + 1) on both endpoints.
QLine update_representative(const QLine &r, std::size_t n, const QLine &line);

/// Groups Q-lines in two passes.
///
/// First pass: every line still unassigned is used, in input order, as an
/// anchor. The unassigned lines inside its influence squares are compared
/// in input order against a representative that starts as their mean and
/// afterwards tracks the mean of the admitted lines. Lines within `psi` are
/// admitted. A cluster is emitted when at least `mu` lines were admitted;
/// otherwise the admitted lines go to a backup list.
///
/// Second pass: backup lines, then the remaining lines, join the first
/// cluster (creation order) within `psi` of its representative, or start a
/// singleton cluster.
///
/// A line is never admitted when doing so would collapse the representative
/// to zero length.
ClusteringResult cluster_queries(std::span<const QLine> lines, const ClusterParams &params);

/// Source and destination MBRs of each cluster's member lines.
std::vector<RegionPair> build_regions(std::span<const Cluster> clusters, std::span<const QLine> lines);

}  // namespace gbpq
