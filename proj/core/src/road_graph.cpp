#include "gbpq/road_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace gbpq {

namespace {

void build_csr(std::size_t n, std::span<const EdgeInput> edges, bool reverse,
               std::vector<std::size_t> &offsets, std::vector<Arc> &arcs) {
    offsets.assign(n + 1, 0);
    for (const auto &e : edges) ++offsets[(reverse ? e.head : e.tail) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    arcs.resize(edges.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    // Input order is preserved within each adjacency list.
    for (const auto &e : edges) {
        const NodeId from = reverse ? e.head : e.tail;
        const NodeId to = reverse ? e.tail : e.head;
        arcs[cursor[from]++] = Arc{to, e.weight};
    }
}

}  // namespace

double admissible_heuristic_scale(std::span<const Point2D> coords, std::span<const EdgeInput> edges) {
    double scale = 1.0;
    for (const auto &e : edges) {
        const double len = euclidean(coords[e.tail], coords[e.head]);
        if (len > 0.0) scale = std::min(scale, e.weight / len);
    }
    return std::max(scale, 0.0);
}

RoadGraph::RoadGraph(std::vector<Point2D> coords, std::span<const EdgeInput> edges,
                     double heuristic_scale, std::vector<std::int64_t> external_ids)
    : coords_(std::move(coords)), external_ids_(std::move(external_ids)) {
    if (!external_ids_.empty() && external_ids_.size() != coords_.size())
        throw std::invalid_argument("external id count does not match node count");
    for (const auto &p : coords_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("node coordinates must be finite");
    }
    for (const auto &e : edges) {
        if (e.tail >= coords_.size() || e.head >= coords_.size())
            throw std::invalid_argument("edge references unknown node");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("edge weight must be finite and non-negative");
    }
    build_csr(coords_.size(), edges, false, fwd_offsets_, fwd_arcs_);
    build_csr(coords_.size(), edges, true, rev_offsets_, rev_arcs_);
    heuristic_scale_ = heuristic_scale < 0.0 ? admissible_heuristic_scale(coords_, edges) : heuristic_scale;
    if (!coords_.empty()) {
        bbox_ = Rect::around(coords_.front());
        for (const auto &p : coords_) bbox_.expand(p);
    }
}

Weight RoadGraph::arc_weight(NodeId u, NodeId v) const {
    Weight best = -1.0;
    for (const auto &a : out_arcs(u)) {
        if (a.head == v && (best < 0.0 || a.weight < best)) best = a.weight;
    }
    return best;
}

ParseError::ParseError(const std::string &source, std::size_t line, const std::string &message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

// Whitespace tokenizer over one line.
class Tokens {
public:
    explicit Tokens(std::string_view line) : rest_(line) {}

    std::string_view next() {
        const auto begin = rest_.find_first_not_of(" \t\r");
        if (begin == std::string_view::npos) {
            rest_ = {};
            return {};
        }
        rest_.remove_prefix(begin);
        const auto end = std::min(rest_.find_first_of(" \t\r"), rest_.size());
        const auto tok = rest_.substr(0, end);
        rest_.remove_prefix(end);
        return tok;
    }

private:
    std::string_view rest_;
};

template <typename T>
bool parse_number(std::string_view tok, T &out) {
    if (tok.empty()) return false;
    if (tok.front() == '+') tok.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

template <typename F>
void for_each_line(std::istream &in, F &&fn) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        fn(std::string_view(line), number);
    }
}

RoadGraph parse_dimacs(std::istream &coord_in, std::istream &arc_in, const std::string &co_name,
                       const std::string &gr_name, DimacsStats *stats) {
    DimacsStats local;
    std::vector<Point2D> coords;
    std::vector<std::int64_t> ids;
    std::unordered_map<std::int64_t, NodeId> dense;

    for_each_line(coord_in, [&](std::string_view line, std::size_t no) {
        Tokens tok(line);
        const auto kind = tok.next();
        if (kind.empty() || kind == "c") return;
        if (kind == "p") {
            // "p aux sp co <n>"
            std::string_view last, t;
            while (!(t = tok.next()).empty()) last = t;
            std::size_t n = 0;
            if (!parse_number(last, n)) throw ParseError(co_name, no, "malformed problem line");
            local.declared_nodes = n;
            return;
        }
        if (kind != "v") throw ParseError(co_name, no, "unknown line type '" + std::string(kind) + "'");
        std::int64_t id = 0;
        Point2D p;
        if (!parse_number(tok.next(), id) || !parse_number(tok.next(), p.x) || !parse_number(tok.next(), p.y) ||
            !tok.next().empty())
            throw ParseError(co_name, no, "expected 'v <id> <x> <y>'");
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ParseError(co_name, no, "non-finite coordinate");
        if (!dense.emplace(id, static_cast<NodeId>(coords.size())).second)
            throw ParseError(co_name, no, "duplicate node id " + std::to_string(id));
        coords.push_back(p);
        ids.push_back(id);
    });

    std::vector<EdgeInput> edges;
    for_each_line(arc_in, [&](std::string_view line, std::size_t no) {
        Tokens tok(line);
        const auto kind = tok.next();
        if (kind.empty() || kind == "c") return;
        if (kind == "p") {
            // "p sp <n> <m>"
            const auto format = tok.next();
            std::size_t n = 0, m = 0;
            if (format.empty() || !parse_number(tok.next(), n) || !parse_number(tok.next(), m))
                throw ParseError(gr_name, no, "malformed problem line");
            if (local.declared_nodes == 0) local.declared_nodes = n;
            local.declared_arcs = m;
            return;
        }
        if (kind != "a") throw ParseError(gr_name, no, "unknown line type '" + std::string(kind) + "'");
        std::int64_t u = 0, v = 0;
        double w = 0.0;
        if (!parse_number(tok.next(), u) || !parse_number(tok.next(), v) || !parse_number(tok.next(), w) ||
            !tok.next().empty())
            throw ParseError(gr_name, no, "expected 'a <u> <v> <w>'");
        if (!(w >= 0.0) || !std::isfinite(w)) throw ParseError(gr_name, no, "negative or non-finite weight");
        const auto tail = dense.find(u);
        const auto head = dense.find(v);
        if (tail == dense.end() || head == dense.end())
            throw ParseError(gr_name, no, "arc references unknown node " + std::to_string(tail == dense.end() ? u : v));
        edges.push_back({tail->second, head->second, w});
    });

    if (stats) *stats = local;
    return RoadGraph(std::move(coords), edges, -1.0, std::move(ids));
}

}  // namespace

RoadGraph load_graph(std::istream &coords, std::istream &arcs, DimacsStats *stats) {
    return parse_dimacs(coords, arcs, "coordinates", "arcs", stats);
}

RoadGraph load_graph_files(const std::string &co_path, const std::string &gr_path, DimacsStats *stats) {
    std::ifstream co(co_path);
    if (!co) throw std::runtime_error("cannot open coordinate file " + co_path);
    std::ifstream gr(gr_path);
    if (!gr) throw std::runtime_error("cannot open arc file " + gr_path);
    return parse_dimacs(co, gr, co_path, gr_path, stats);
}

namespace {

void write_number(std::ostream &out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

void write_dimacs(const RoadGraph &g, std::ostream &coords, std::ostream &arcs, const std::string &comment) {
    if (!comment.empty()) {
        coords << "c " << comment << '\n';
        arcs << "c " << comment << '\n';
    }
    coords << "p aux sp co " << g.node_count() << '\n';
    for (NodeId n = 0; n < g.node_count(); ++n) {
        coords << "v " << g.external_id(n) << ' ';
        write_number(coords, g.coord(n).x);
        coords << ' ';
        write_number(coords, g.coord(n).y);
        coords << '\n';
    }
    arcs << "p sp " << g.node_count() << ' ' << g.edge_count() << '\n';
    for (NodeId n = 0; n < g.node_count(); ++n) {
        for (const auto &a : g.out_arcs(n)) {
            arcs << "a " << g.external_id(n) << ' ' << g.external_id(a.head) << ' ';
            write_number(arcs, a.weight);
            arcs << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// GridIndex

double GridIndex::default_cell_size(const RoadGraph &g) {
    const Rect b = g.bounding_box();
    const double diag = std::hypot(b.max_x - b.min_x, b.max_y - b.min_y);
    return diag > 0.0 ? diag / 256.0 : 1.0;
}

GridIndex::GridIndex(const RoadGraph &g, double cell_size) : graph_(&g), cell_size_(cell_size) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw std::invalid_argument("cell_size must be positive");
    const Rect b = g.bounding_box();
    origin_ = {b.min_x, b.min_y};
    if (!g.empty()) {
        cols_ = static_cast<long>(std::floor((b.max_x - b.min_x) / cell_size)) + 1;
        rows_ = static_cast<long>(std::floor((b.max_y - b.min_y) / cell_size)) + 1;
    }
    const auto cells = static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_);
    cell_offsets_.assign(cells + 1, 0);
    for (NodeId n = 0; n < g.node_count(); ++n) ++cell_offsets_[cell_of(n) + 1];
    for (std::size_t c = 0; c < cells; ++c) cell_offsets_[c + 1] += cell_offsets_[c];
    cell_nodes_.resize(g.node_count());
    std::vector<std::size_t> cursor(cell_offsets_.begin(), cell_offsets_.end() - 1);
    // Ascending ids within each cell.
    for (NodeId n = 0; n < g.node_count(); ++n) cell_nodes_[cursor[cell_of(n)]++] = n;
}

long GridIndex::clamp_col(double x) const {
    const double c = std::floor((x - origin_.x) / cell_size_);
    return static_cast<long>(std::clamp(c, 0.0, static_cast<double>(cols_ - 1)));
}

long GridIndex::clamp_row(double y) const {
    const double r = std::floor((y - origin_.y) / cell_size_);
    return static_cast<long>(std::clamp(r, 0.0, static_cast<double>(rows_ - 1)));
}

std::size_t GridIndex::cell_of(NodeId n) const {
    const Point2D p = graph_->coord(n);
    return static_cast<std::size_t>(clamp_row(p.y)) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(clamp_col(p.x));
}

void GridIndex::scan_cell(long col, long row, Point2D p, double &best_sq, NodeId &best) const {
    const auto cell = static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(col);
    for (std::size_t i = cell_offsets_[cell]; i < cell_offsets_[cell + 1]; ++i) {
        const NodeId n = cell_nodes_[i];
        const Point2D q = graph_->coord(n);
        const double dx = q.x - p.x, dy = q.y - p.y;
        const double d = dx * dx + dy * dy;
        if (d < best_sq || (d == best_sq && n < best)) {
            best_sq = d;
            best = n;
        }
    }
}

NodeId GridIndex::nearest(Point2D p) const {
    if (graph_->empty()) throw std::invalid_argument("cannot snap on an empty graph");
    const long c0 = clamp_col(p.x), r0 = clamp_row(p.y);
    double best_sq = std::numeric_limits<double>::infinity();
    NodeId best = kInvalidNode;
    const long max_ring = std::max(cols_, rows_);
    for (long k = 0; k <= max_ring; ++k) {
        // Cells in ring k lie at least (k - 1) cells away from p.
        if (best != kInvalidNode) {
            const double bound = (static_cast<double>(k) - 1.0 - 1e-6) * cell_size_;
            if (bound > 0.0 && bound * bound > best_sq) break;
        }
        for (long r = r0 - k; r <= r0 + k; ++r) {
            if (r < 0 || r >= rows_) continue;
            const bool edge_row = (r == r0 - k || r == r0 + k);
            const long step = edge_row ? 1 : 2 * k;
            for (long c = c0 - k; c <= c0 + k; c += (step == 0 ? 1 : step)) {
                if (c >= 0 && c < cols_) scan_cell(c, r, p, best_sq, best);
            }
        }
    }
    return best;
}

std::vector<NodeId> GridIndex::nodes_in(const Rect &r) const {
    std::vector<NodeId> out;
    if (graph_->empty()) return out;
    const Rect b = graph_->bounding_box();
    if (!r.intersects(b)) return out;
    for (long row = clamp_row(r.min_y); row <= clamp_row(r.max_y); ++row) {
        for (long col = clamp_col(r.min_x); col <= clamp_col(r.max_x); ++col) {
            const auto cell = static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(col);
            for (std::size_t i = cell_offsets_[cell]; i < cell_offsets_[cell + 1]; ++i) {
                if (r.contains(graph_->coord(cell_nodes_[i]))) out.push_back(cell_nodes_[i]);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GridIndex build_grid(const RoadGraph &g, double cell_size) { return GridIndex(g, cell_size); }

NodeId snap_to_node(const RoadGraph &, const GridIndex &idx, Point2D p) { return idx.nearest(p); }

NodeId snap_to_node(const RoadGraph &g, Point2D p) {
    if (g.empty()) throw std::invalid_argument("cannot snap on an empty graph");
    NodeId best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (NodeId n = 0; n < g.node_count(); ++n) {
        const Point2D q = g.coord(n);
        const double dx = q.x - p.x, dy = q.y - p.y;
        const double d = dx * dx + dy * dy;
        if (d < best_sq) {
            best_sq = d;
            best = n;
        }
    }
    return best;
}

}  // namespace gbpq
