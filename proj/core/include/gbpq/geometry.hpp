#pragma once

#include <stdexcept>
#include <string>

namespace gbpq {

struct Point2D {
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Point2D &, const Point2D &) = default;
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator*(Point2D a, double k) { return {a.x * k, a.y * k}; }

double euclidean(Point2D a, Point2D b);
double chebyshev(Point2D a, Point2D b);

/// Straight segment from a query's source location to its destination.
/// Orientation matters: `source` and `dest` are distinct roles.
struct QLine {
    Point2D source;
    Point2D dest;

    double length() const { return euclidean(source, dest); }
    bool degenerate() const { return source == dest; }

    friend bool operator==(const QLine &, const QLine &) = default;
};

/// Axis-aligned rectangle, boundary inclusive.
struct Rect {
    double min_x{0.0};
    double min_y{0.0};
    double max_x{0.0};
    double max_y{0.0};

    static Rect around(Point2D p) { return {p.x, p.y, p.x, p.y}; }

    void expand(Point2D p);
    bool contains(Point2D p) const;
    bool intersects(const Rect &other) const;
    /// Distance from p to the closest point of the rectangle (0 inside).
    double distance_to(Point2D p) const;

    friend bool operator==(const Rect &, const Rect &) = default;
};

struct DistanceWeights {
    double perpendicular{1.0};
    double parallel{1.0};
    double angular{1.0};
};

class GeometryError : public std::invalid_argument {
public:
    explicit GeometryError(const std::string &what) : std::invalid_argument(what) {}
};

// Components of the Q-line distance. `base` is the line the other one is
// projected onto; callers comparing against a cluster pass the
// representative as base.

/// Larger of the two gaps between base's endpoints and the orthogonal
/// projections of other's endpoints onto the line through base.
double parallel_distance(const QLine &base, const QLine &other);

/// Order-2 Lehmer mean of the endpoint-to-line distances of `other`
/// against the line through `base`. Collinear lines give 0.
double perpendicular_distance(const QLine &base, const QLine &other);

/// Longer length times the sine of the acute angle between the lines.
/// Symmetric and orientation-insensitive.
double angular_distance(const QLine &a, const QLine &b);

double qline_distance(const QLine &base, const QLine &other, const DistanceWeights &w = {});

/// True iff candidate's source lies in the square of half side `delta`
/// around anchor's source, and likewise for the destinations.
bool within_influence(const QLine &anchor, const QLine &candidate, double delta);

}  // namespace gbpq
