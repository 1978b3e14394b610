#ifndef GEOPROOF_GEOMETRY_HPP
#define GEOPROOF_GEOMETRY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace geoproof::interp {

struct GeoPoint {
    double x = 0;
    double y = 0;

    friend GeoPoint operator+(GeoPoint a, GeoPoint b) { return {a.x + b.x, a.y + b.y}; }
    friend GeoPoint operator-(GeoPoint a, GeoPoint b) { return {a.x - b.x, a.y - b.y}; }
    friend GeoPoint operator*(double s, GeoPoint p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

double dot(GeoPoint a, GeoPoint b);
double cross(GeoPoint a, GeoPoint b);
double norm(GeoPoint a);
double distance(GeoPoint a, GeoPoint b);

// splitmix64; the uniform double takes the top 53 bits.
struct Rng {
    std::uint64_t state = 0;
    explicit Rng(std::uint64_t seed = 0) : state(seed) {}
    std::uint64_t next_u64();
    double next_unit(); // [0, 1)
};

struct NamedPoint {
    std::string name; // empty for computed decoration points
    GeoPoint at;
    friend bool operator==(const NamedPoint&, const NamedPoint&) = default;
};

struct DrawOp {
    enum class Kind { MarkPoint, Segment, Circle, RightAngleMark };
    enum class MarkStyle { Circled, Label };
    enum class Placement { Right, Above, Below };
    enum class ColorRole { Construction, Highlight };

    Kind kind = Kind::Segment;
    NamedPoint a; // MarkPoint: the point; Segment: endpoint; Circle: center;
                  // RightAngleMark: vertex
    NamedPoint b; // Segment: endpoint; Circle: through; RightAngleMark: toward
    NamedPoint c; // RightAngleMark: toward
    MarkStyle style = MarkStyle::Circled;
    Placement placement = Placement::Right;
    int layer = 0;
    ColorRole color = ColorRole::Construction;

    friend bool operator==(const DrawOp&, const DrawOp&) = default;
};

struct GeoModel {
    std::map<std::string, GeoPoint> points;
    std::vector<DrawOp> ops;
    int next_layer = 0;
    Rng rng{0};
    double tol_branch = 1e-6;
    double tol_check = 1e-9;
};

GeoPoint midpoint(GeoPoint p, GeoPoint q);
GeoPoint towards(GeoPoint p, GeoPoint q, double t);

// Point on ray a->b strictly beyond b at distance d from b.
GeoPoint extend(GeoPoint a, GeoPoint b, double d, double tol_branch = 1e-6);

enum class WhichIntersection { First, Second };

// Intersection of circles (c1, |c1-t1|) and (c2, |c2-t2|). First lies on the
// left of the directed line c1->c2; tangency yields the same point for both.
GeoPoint circle_circle(GeoPoint c1, GeoPoint t1, GeoPoint c2, GeoPoint t2,
                       WhichIntersection which, double tol_branch = 1e-6);

GeoPoint line_line(GeoPoint p1, GeoPoint q1, GeoPoint p2, GeoPoint q2,
                   double tol_branch = 1e-6);

// Ordered by the ray parameter along p->q.
GeoPoint line_circle(GeoPoint p, GeoPoint q, GeoPoint center, GeoPoint through,
                     WhichIntersection which, double tol_branch = 1e-6);

double random_unit(GeoModel& model);

// Numeric discriminators shared by branch selection and non-degeneracy checks.
bool points_coincide(GeoPoint p, GeoPoint q, double tol);
// |cross| against tol * scale^2 where scale is the longest side.
bool collinear(GeoPoint p, GeoPoint q, GeoPoint r, double tol);
// q strictly between p and r.
bool between_strict(GeoPoint p, GeoPoint q, GeoPoint r, double tol);

} // namespace geoproof::interp

#endif
