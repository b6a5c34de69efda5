#include "gbpq/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gbpq {

namespace {

double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }

// Unit direction and length of a line; throws on zero length.
struct Frame {
    Point2D origin;
    Point2D unit;
    double length;
};

Frame frame_of(const QLine &line, const char *message) {
    const Point2D dir = line.dest - line.source;
    const double len = std::hypot(dir.x, dir.y);
    if (!(len > 0.0)) throw GeometryError(message);
    return {line.source, dir * (1.0 / len), len};
}

}  // namespace

double euclidean(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

double chebyshev(Point2D a, Point2D b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

void Rect::expand(Point2D p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
}

bool Rect::contains(Point2D p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
}

bool Rect::intersects(const Rect &o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
}

double Rect::distance_to(Point2D p) const {
    const double dx = std::max({min_x - p.x, 0.0, p.x - max_x});
    const double dy = std::max({min_y - p.y, 0.0, p.y - max_y});
    return std::hypot(dx, dy);
}

double parallel_distance(const QLine &base, const QLine &other) {
    const Frame f = frame_of(base, "degenerate base line");
    const double t_source = dot(other.source - f.origin, f.unit);
    const double t_dest = dot(other.dest - f.origin, f.unit);
    return std::max(std::abs(t_source), std::abs(f.length - t_dest));
}

double perpendicular_distance(const QLine &base, const QLine &other) {
    const Frame f = frame_of(base, "degenerate base line");
    const double l1 = std::abs(cross(f.unit, other.source - f.origin));
    const double l2 = std::abs(cross(f.unit, other.dest - f.origin));
    const double sum = l1 + l2;
    if (sum == 0.0) return 0.0;
    // Guard the mean into [min, max] against rounding.
    const double mean = (l1 * l1 + l2 * l2) / sum;
    return std::clamp(mean, std::min(l1, l2), std::max(l1, l2));
}

double angular_distance(const QLine &a, const QLine &b) {
    const Frame fa = frame_of(a, "degenerate line");
    const Frame fb = frame_of(b, "degenerate line");
    const double sine = std::min(1.0, std::abs(cross(fa.unit, fb.unit)));
    return std::max(fa.length, fb.length) * sine;
}

double qline_distance(const QLine &base, const QLine &other, const DistanceWeights &w) {
    return w.perpendicular * perpendicular_distance(base, other) +
           w.parallel * parallel_distance(base, other) + w.angular * angular_distance(base, other);
}

bool within_influence(const QLine &anchor, const QLine &candidate, double delta) {
    return chebyshev(anchor.source, candidate.source) <= delta &&
           chebyshev(anchor.dest, candidate.dest) <= delta;
}

}  // namespace gbpq
