#include "gbpq/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace gbpq {

void ClusterParams::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(psi >= 0.0)) throw std::invalid_argument("psi must be non-negative");
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    if (!(weights.perpendicular >= 0.0) || !(weights.parallel >= 0.0) || !(weights.angular >= 0.0))
        throw std::invalid_argument("distance weights must be non-negative");
}

QLine representative_qline(std::span<const QLine> lines) {
    if (lines.empty()) throw std::invalid_argument("representative of an empty set");
    Point2D s{}, d{};
    for (const auto &l : lines) {
        s = s + l.source;
        d = d + l.dest;
    }
    const double inv = 1.0 / static_cast<double>(lines.size());
    return {s * inv, d * inv};
}

QLine update_representative(const QLine &r, std::size_t n, const QLine &line) {
    if (n < 1) throw std::invalid_argument("representative must stand for at least one line");
    const double k = static_cast<double>(n);
    const double inv = 1.0 / (k + 1.0);
    return {(r.source * k + line.source) * inv, (r.dest * k + line.dest) * inv};
}

namespace {

// Buckets line indices by the cell of their source point. Removed lines are
// dropped from a bucket the next time it is scanned.
class SourceGrid {
public:
    SourceGrid(std::span<const QLine> lines, double cell) : cell_(cell) {
        for (std::size_t i = 0; i < lines.size(); ++i) buckets_[key(cell_index(lines[i].source.x), cell_index(lines[i].source.y))].push_back(i);
    }

    template <typename Keep>
    void collect(Point2D centre, double radius, Keep &&keep, std::vector<std::size_t> &out) {
        out.clear();
        for (auto cy = cell_index(centre.y - radius); cy <= cell_index(centre.y + radius); ++cy) {
            for (auto cx = cell_index(centre.x - radius); cx <= cell_index(centre.x + radius); ++cx) {
                const auto it = buckets_.find(key(cx, cy));
                if (it == buckets_.end()) continue;
                auto &bucket = it->second;
                std::erase_if(bucket, [&](std::size_t i) { return !keep.alive(i); });
                for (const auto i : bucket) {
                    if (keep.match(i)) out.push_back(i);
                }
            }
        }
        std::sort(out.begin(), out.end());
    }

private:
    std::int64_t cell_index(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
    static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
        return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

ClusteringResult cluster_queries(std::span<const QLine> lines, const ClusterParams &params) {
    params.validate();
    for (const auto &l : lines) {
        if (l.degenerate()) throw GeometryError("degenerate Q-line");
    }

    ClusteringResult result;
    auto &clusters = result.clusters;
    std::vector<char> assigned(lines.size(), 0);
    std::vector<std::size_t> backup;

    SourceGrid grid(lines, params.delta);
    std::vector<std::size_t> influence;
    std::vector<QLine> influence_lines;

    for (std::size_t anchor = 0; anchor < lines.size(); ++anchor) {
        if (assigned[anchor]) continue;
        const QLine &anchor_line = lines[anchor];
        struct {
            const std::vector<char> &assigned;
            std::span<const QLine> lines;
            const QLine &anchor;
            double delta;
            bool alive(std::size_t i) const { return !assigned[i]; }
            bool match(std::size_t i) const { return within_influence(anchor, lines[i], delta); }
        } filter{assigned, lines, anchor_line, params.delta};
        grid.collect(anchor_line.source, params.delta, filter, influence);

        influence_lines.clear();
        for (const auto i : influence) influence_lines.push_back(lines[i]);
        QLine rep = representative_qline(influence_lines);
        if (rep.degenerate()) rep = anchor_line;

        std::vector<std::size_t> admitted;
        for (const auto i : influence) {
            if (qline_distance(rep, lines[i], params.weights) > params.psi) continue;
            // The representative tracks the mean of the admitted lines.
            const QLine next = admitted.empty() ? lines[i] : update_representative(rep, admitted.size(), lines[i]);
            if (next.degenerate()) continue;
            rep = next;
            admitted.push_back(i);
            assigned[i] = 1;
        }

        if (!admitted.empty() && admitted.size() >= params.mu) {
            clusters.push_back({std::move(admitted), rep, true});
        } else {
            backup.insert(backup.end(), admitted.begin(), admitted.end());
        }
    }
    result.first_pass_clusters = clusters.size();

    std::vector<std::size_t> leftovers = std::move(backup);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!assigned[i]) leftovers.push_back(i);
    }
    result.first_pass_unclustered = leftovers.size();

    for (const auto q : leftovers) {
        const QLine &line = lines[q];
        bool placed = false;
        for (auto &c : clusters) {
            if (qline_distance(c.representative, line, params.weights) > params.psi) continue;
            const QLine next = update_representative(c.representative, c.member_count(), line);
            if (next.degenerate()) continue;
            c.representative = next;
            c.members.push_back(q);
            placed = true;
            break;
        }
        if (!placed) clusters.push_back({{q}, line, false});
    }
    return result;
}

std::vector<RegionPair> build_regions(std::span<const Cluster> clusters, std::span<const QLine> lines) {
    std::vector<RegionPair> regions;
    regions.reserve(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto &members = clusters[c].members;
        if (members.empty()) throw std::invalid_argument("cluster without members");
        RegionPair rp;
        rp.cluster_id = c;
        rp.source_mbr = Rect::around(lines[members.front()].source);
        rp.dest_mbr = Rect::around(lines[members.front()].dest);
        for (const auto m : members) {
            rp.source_mbr.expand(lines[m].source);
            rp.dest_mbr.expand(lines[m].dest);
        }
        regions.push_back(std::move(rp));
    }
    return regions;
}

}  // namespace gbpq
