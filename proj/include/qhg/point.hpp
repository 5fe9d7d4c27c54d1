#pragma once

#include <cmath>
#include <compare>

namespace qhg {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
    // Lexicographic (x, then y); used for deterministic tie-breaking.
    friend constexpr auto operator<=>(Point2 a, Point2 b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 lerp(Point2 a, Point2 b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Closest point to `p` on the closed segment [a, b].
inline Point2 closest_on_segment(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return a;
    double t = dot(p - a, d) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return lerp(a, b, t);
}

struct Box {
    Point2 lo;
    Point2 hi;

    bool empty() const { return !(lo.x < hi.x && lo.y < hi.y); }
    bool contains(Point2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
};

inline Box intersect(const Box& a, const Box& b) {
    return {{std::fmax(a.lo.x, b.lo.x), std::fmax(a.lo.y, b.lo.y)},
            {std::fmin(a.hi.x, b.hi.x), std::fmin(a.hi.y, b.hi.y)}};
}

}  // namespace qhg
