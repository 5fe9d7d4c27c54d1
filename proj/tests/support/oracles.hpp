#pragma once

// Closed forms and samplers used as independent references in tests. Nothing here calls the
// library's quadrature or graph code.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qhg/domain.hpp"

namespace oracle {

using qhg::Point2;

// Upper half-plane: 1/y is the hyperbolic density, so k is the hyperbolic distance.
inline double half_plane_k(Point2 a, Point2 b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * a.y * b.y));
}

// Punctured plane: (log r, theta) is an isometry onto the flat cylinder of circumference 2π.
inline double punctured_k(Point2 a, Point2 b) {
    const double dr = std::log(std::hypot(b.x, b.y) / std::hypot(a.x, a.y));
    double dt = std::fabs(std::atan2(b.y, b.x) - std::atan2(a.y, a.x));
    if (dt > std::numbers::pi) dt = 2.0 * std::numbers::pi - dt;
    return std::sqrt(dr * dr + dt * dt);
}

// Unit disk, two points on one radius (same direction from the center).
inline double disk_radial_k(double r1, double r2) { return std::fabs(std::log((1.0 - r1) / (1.0 - r2))); }

// ∫_a^b dt/t.
inline double log_ratio(double a, double b) { return std::fabs(std::log(b / a)); }

// Distance to the polygon boundary by sampling every edge at `per_edge` points.
inline double sampled_polygon_distance(const std::vector<Point2>& v, Point2 p, int per_edge = 200000) {
    double best = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i], b = v[(i + 1) % v.size()];
        for (int k = 0; k <= per_edge; ++k) {
            const double t = static_cast<double>(k) / per_edge;
            best = std::min(best, std::hypot(p.x - (a.x + t * (b.x - a.x)), p.y - (a.y + t * (b.y - a.y))));
        }
    }
    return best;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

    // Points away from the boundary scale so that single engine calls stay cheap.
    Point2 in_half_plane() { return {uniform(-1.5, 1.5), std::exp(uniform(std::log(0.3), std::log(3.0)))}; }
    Point2 in_unit_disk() {
        const double r = 0.8 * std::sqrt(unit());
        const double a = uniform(0.0, 2.0 * std::numbers::pi);
        return {r * std::cos(a), r * std::sin(a)};
    }
    Point2 in_punctured_plane() {
        const double r = std::exp(uniform(std::log(0.4), std::log(2.5)));
        const double a = uniform(0.0, 2.0 * std::numbers::pi);
        return {r * std::cos(a), r * std::sin(a)};
    }
    Point2 in(const qhg::Domain& d) {
        switch (d.kind()) {
            case qhg::DomainKind::HalfPlane: return in_half_plane();
            case qhg::DomainKind::UnitDisk: return in_unit_disk();
            default: return in_punctured_plane();
        }
    }

private:
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 rng_;
};

}  // namespace oracle
