#include "gbpq/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

namespace gbpq {

std::string to_string(Distribution d) { return d == Distribution::gaussian ? "gaussian" : "zipf"; }

Distribution parse_distribution(const std::string &name) {
    if (name == "gaussian") return Distribution::gaussian;
    if (name == "zipf") return Distribution::zipf;
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

void WorkloadSpec::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(dc > 0.0 && dc <= 1.0)) throw std::invalid_argument("dc must lie in (0, 1]");
    if (queries_per_group < 1) throw std::invalid_argument("queries_per_group must be at least 1");
    if (!(normalized_side > 0.0)) throw std::invalid_argument("normalized_side must be positive");
}

double WorkloadSpec::min_query_distance() const { return dc * 100.0 * std::sqrt(omega); }

SpaceFrame make_frame(const RoadGraph &g, const WorkloadSpec &spec) {
    const Rect r = spec.space ? *spec.space : g.bounding_box();
    const double extent = std::max(r.max_x - r.min_x, r.max_y - r.min_y);
    SpaceFrame f;
    f.origin = {r.min_x, r.min_y};
    f.side = spec.normalized_side;
    f.scale = extent > 0.0 ? extent / spec.normalized_side : 1.0;
    return f;
}

namespace {

constexpr int kZipfCells = 10;          // sub-cells per window side
constexpr double kZipfExponent = 1.0;
constexpr int kMaxRedraws = 1000;

struct Window {
    double x0, y0, x1, y1;

    Point2D centre() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
    // Largest distance between a point here and a point in `o`.
    double max_distance(const Window &o) const {
        const double dx = std::max(std::abs(o.x1 - x0), std::abs(x1 - o.x0));
        const double dy = std::max(std::abs(o.y1 - y0), std::abs(y1 - o.y0));
        return std::hypot(dx, dy);
    }
};

class PointSampler {
public:
    PointSampler(Distribution dist, std::mt19937_64 &rng) : dist_(dist), rng_(rng) {
        std::vector<double> w(kZipfCells * kZipfCells);
        for (std::size_t r = 0; r < w.size(); ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), kZipfExponent);
        rank_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    }

    // Per-window state: a random ranking of the window's sub-cells.
    std::vector<std::size_t> ranking() {
        std::vector<std::size_t> order(kZipfCells * kZipfCells);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng_);
        return order;
    }

    Point2D draw(const Window &w, const std::vector<std::size_t> &ranking) {
        if (dist_ == Distribution::gaussian) {
            return {gaussian_in(w.x0, w.x1), gaussian_in(w.y0, w.y1)};
        }
        const std::size_t cell = ranking[rank_(rng_)];
        const double cw = (w.x1 - w.x0) / kZipfCells, ch = (w.y1 - w.y0) / kZipfCells;
        const double cx = w.x0 + static_cast<double>(cell % kZipfCells) * cw;
        const double cy = w.y0 + static_cast<double>(cell / kZipfCells) * ch;
        std::uniform_real_distribution<double> ux(cx, cx + cw), uy(cy, cy + ch);
        const double x = ux(rng_);
        return {x, uy(rng_)};
    }

private:
    // Normal around the centre with sigma = side / 6, resampled into range.
    double gaussian_in(double lo, double hi) {
        std::normal_distribution<double> nd((lo + hi) / 2, (hi - lo) / 6);
        for (;;) {
            const double v = nd(rng_);
            if (v >= lo && v <= hi) return v;
        }
    }

    Distribution dist_;
    std::mt19937_64 &rng_;
    std::discrete_distribution<std::size_t> rank_;
};

}  // namespace

QuerySet generate_workload(const RoadGraph &g, const GridIndex &idx, const WorkloadSpec &spec) {
    spec.validate();
    if (g.empty()) throw std::invalid_argument("cannot generate queries on an empty graph");

    QuerySet qs;
    qs.spec = spec;
    qs.frame = make_frame(g, spec);
    const double side = spec.normalized_side;
    const double min_dist = spec.min_query_distance();

    // A window at least as large as the space leaves a single window.
    const auto per_side = static_cast<std::size_t>(spec.omega >= side ? 1 : std::ceil(side / spec.omega));
    const double width = per_side == 1 ? side : spec.omega;
    auto window_at = [&](std::size_t k) {
        const double x0 = static_cast<double>(k % per_side) * width;
        const double y0 = static_cast<double>(k / per_side) * width;
        return Window{x0, y0, std::min(side, x0 + width), std::min(side, y0 + width)};
    };
    const std::size_t windows = per_side * per_side;

    std::mt19937_64 rng(spec.seed);
    PointSampler sampler(spec.distribution, rng);
    std::uniform_int_distribution<std::size_t> pick(0, windows - 1);

    qs.queries.reserve(spec.n);
    qs.points.reserve(spec.n);
    while (qs.queries.size() < spec.n) {
        Window from{}, to{};
        bool feasible = false;
        for (int attempt = 0; attempt < kMaxRedraws && !feasible; ++attempt) {
            const std::size_t a = pick(rng);
            std::size_t b = a;
            while (windows > 1 && b == a) b = pick(rng);
            from = window_at(a);
            to = window_at(b);
            const double reach = windows > 1 ? euclidean(from.centre(), to.centre()) : from.max_distance(to);
            feasible = reach >= min_dist;
        }
        if (!feasible) throw WorkloadError("no window pair can satisfy the minimum query distance");

        const auto from_rank = sampler.ranking();
        const auto to_rank = sampler.ranking();
        for (std::size_t k = 0; k < spec.queries_per_group && qs.queries.size() < spec.n; ++k) {
            Point2D s{}, d{};
            int redraws = 0;
            for (;;) {
                s = sampler.draw(from, from_rank);
                d = sampler.draw(to, to_rank);
                if (euclidean(s, d) >= min_dist) break;
                if (++redraws >= kMaxRedraws)
                    throw WorkloadError("minimum query distance unsatisfiable after " + std::to_string(kMaxRedraws) +
                                        " redraws");
            }
            const QLine pts{qs.frame.to_graph(s), qs.frame.to_graph(d)};
            qs.points.push_back(pts);
            qs.queries.push_back({idx.nearest(pts.source), idx.nearest(pts.dest)});
        }
    }
    return qs;
}

QuerySet generate_workload(const RoadGraph &g, const WorkloadSpec &spec) {
    const GridIndex idx(g, GridIndex::default_cell_size(g));
    return generate_workload(g, idx, spec);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <typename T>
bool parse(std::string_view tok, T &out) {
    if (tok.empty()) return false;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

void save_queries(const QuerySet &qs, std::ostream &out) {
    const auto &s = qs.spec;
    out << "# gbpq-queries v1\n";
    out << "# n=" << s.n << " omega=" << fmt_double(s.omega) << " dc=" << fmt_double(s.dc)
        << " dist=" << to_string(s.distribution) << " queries_per_group=" << s.queries_per_group
        << " seed=" << s.seed << '\n';
    out << "# origin_x=" << fmt_double(qs.frame.origin.x) << " origin_y=" << fmt_double(qs.frame.origin.y)
        << " scale=" << fmt_double(qs.frame.scale) << " side=" << fmt_double(qs.frame.side) << '\n';
    for (std::size_t i = 0; i < qs.queries.size(); ++i) {
        const auto &q = qs.queries[i];
        const auto &p = qs.points[i];
        out << "q " << q.source << ' ' << q.dest << ' ' << fmt_double(p.source.x) << ' ' << fmt_double(p.source.y)
            << ' ' << fmt_double(p.dest.x) << ' ' << fmt_double(p.dest.y) << '\n';
    }
}

void save_queries(const QuerySet &qs, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write query file " + path);
    save_queries(qs, out);
    if (!out) throw std::runtime_error("error writing query file " + path);
}

QuerySet load_queries(std::istream &in, const std::string &name) {
    QuerySet qs;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::istringstream tokens(line);
        std::string kind;
        if (!(tokens >> kind)) continue;
        if (kind[0] == '#') {
            // Header: whitespace separated key=value pairs; other text is ignored.
            std::string kv = kind.size() > 1 ? kind.substr(1) : std::string();
            do {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
                bool ok = true;
                auto &s = qs.spec;
                if (key == "n") ok = parse(value, s.n);
                else if (key == "omega") ok = parse(value, s.omega);
                else if (key == "dc") ok = parse(value, s.dc);
                else if (key == "queries_per_group") ok = parse(value, s.queries_per_group);
                else if (key == "seed") ok = parse(value, s.seed);
                else if (key == "origin_x") ok = parse(value, qs.frame.origin.x);
                else if (key == "origin_y") ok = parse(value, qs.frame.origin.y);
                else if (key == "scale") ok = parse(value, qs.frame.scale);
                else if (key == "side") {
                    ok = parse(value, qs.frame.side);
                    s.normalized_side = qs.frame.side;
                } else if (key == "dist") {
                    try {
                        s.distribution = parse_distribution(value);
                    } catch (const std::invalid_argument &) {
                        ok = false;
                    }
                }
                if (!ok) throw ParseError(name, no, "bad header value for '" + key + "'");
            } while (tokens >> kv);
            continue;
        }
        if (kind != "q") throw ParseError(name, no, "unknown line type '" + kind + "'");
        std::string fields[6], extra;
        for (auto &f : fields) tokens >> f;
        PathQuery q;
        QLine p;
        if (!parse(fields[0], q.source) || !parse(fields[1], q.dest) || !parse(fields[2], p.source.x) ||
            !parse(fields[3], p.source.y) || !parse(fields[4], p.dest.x) || !parse(fields[5], p.dest.y) ||
            (tokens >> extra))
            throw ParseError(name, no, "expected 'q <src> <dst> <sx> <sy> <dx> <dy>'");
        qs.queries.push_back(q);
        qs.points.push_back(p);
    }
    return qs;
}

QuerySet load_queries(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open query file " + path);
    return load_queries(in, path);
}

}  // namespace gbpq
