#include "geoproof/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "geoproof/error.hpp"

namespace geoproof::interp {

double dot(GeoPoint a, GeoPoint b) { return a.x * b.x + a.y * b.y; }
double cross(GeoPoint a, GeoPoint b) { return a.x * b.y - a.y * b.x; }
double norm(GeoPoint a) { return std::hypot(a.x, a.y); }
double distance(GeoPoint a, GeoPoint b) { return norm(a - b); }

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

GeoPoint midpoint(GeoPoint p, GeoPoint q) { return {(p.x + q.x) / 2, (p.y + q.y) / 2}; }

GeoPoint towards(GeoPoint p, GeoPoint q, double t) { return p + t * (q - p); }

GeoPoint extend(GeoPoint a, GeoPoint b, double d, double tol_branch) {
    double ab = distance(a, b);
    if (ab <= tol_branch)
        throw DegenerateInputError("extend with coincident base points");
    if (d <= 0) throw DegenerateInputError("extend with non-positive distance");
    return b + (d / ab) * (b - a);
}

GeoPoint circle_circle(GeoPoint c1, GeoPoint t1, GeoPoint c2, GeoPoint t2,
                       WhichIntersection which, double tol_branch) {
    double r1 = distance(c1, t1);
    double r2 = distance(c2, t2);
    double d = distance(c1, c2);
    if (d <= tol_branch) {
        if (std::abs(r1 - r2) <= tol_branch) throw ConcentricCoincidentError();
        throw NoIntersectionError("concentric circles with distinct radii");
    }
    if (d > r1 + r2 + tol_branch)
        throw NoIntersectionError("circles too far apart");
    if (d < std::abs(r1 - r2) - tol_branch)
        throw NoIntersectionError("one circle inside the other");

    double along = (r1 * r1 - r2 * r2 + d * d) / (2 * d);
    double h2 = r1 * r1 - along * along;
    double h = h2 > 0 ? std::sqrt(h2) : 0.0; // tangency within tolerance
    GeoPoint u = (1.0 / d) * (c2 - c1);
    GeoPoint left{-u.y, u.x};
    GeoPoint base = c1 + along * u;
    return which == WhichIntersection::First ? base + h * left : base - h * left;
}

GeoPoint line_line(GeoPoint p1, GeoPoint q1, GeoPoint p2, GeoPoint q2, double tol_branch) {
    GeoPoint d1 = q1 - p1;
    GeoPoint d2 = q2 - p2;
    double denom = cross(d1, d2);
    double scale = std::max(norm(d1) * norm(d2), 1e-300);
    if (std::abs(denom) <= tol_branch * scale)
        throw NoIntersectionError("parallel lines");
    double t = cross(p2 - p1, d2) / denom;
    return p1 + t * d1;
}

GeoPoint line_circle(GeoPoint p, GeoPoint q, GeoPoint center, GeoPoint through,
                     WhichIntersection which, double tol_branch) {
    GeoPoint d = q - p;
    double len = norm(d);
    if (len <= tol_branch) throw DegenerateInputError("line through coincident points");
    double r = distance(center, through);
    GeoPoint f = p - center;
    double a = dot(d, d);
    double b = 2 * dot(f, d);
    double c = dot(f, f) - r * r;
    double disc = b * b - 4 * a * c;
    if (disc < 0) {
        if (disc < -tol_branch * a * std::max(r, 1.0))
            throw NoIntersectionError("line misses the circle");
        disc = 0;
    }
    double s = std::sqrt(disc);
    double t1 = (-b - s) / (2 * a);
    double t2 = (-b + s) / (2 * a);
    return p + (which == WhichIntersection::First ? t1 : t2) * d;
}

double random_unit(GeoModel& model) { return model.rng.next_unit(); }

bool points_coincide(GeoPoint p, GeoPoint q, double tol) { return distance(p, q) <= tol; }

bool collinear(GeoPoint p, GeoPoint q, GeoPoint r, double tol) {
    double defect = std::abs(cross(q - p, r - p));
    double scale = std::max({distance(p, q), distance(p, r), distance(q, r)});
    return defect <= tol * scale * scale;
}

bool between_strict(GeoPoint p, GeoPoint q, GeoPoint r, double tol) {
    if (!collinear(p, q, r, tol)) return false;
    if (points_coincide(p, q, tol) || points_coincide(q, r, tol)) return false;
    return dot(q - p, r - q) > 0;
}

} // namespace geoproof::interp
