#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qhg/point.hpp"

namespace qhg {

// Supported planar domains. Each shape knows its exact distance to the boundary.

/// Upper half-plane {y > 0}.
struct HalfPlane {};

/// R^2 minus the origin.
struct PuncturedPlane {};

/// Open unit disk centered at the origin.
struct UnitDisk {};

/// {r_in < |p| < r_out}; r_in may be 0 (punctured disk).
struct Annulus {
    double r_in = 0.0;
    double r_out = 1.0;
};

/// Open axis-aligned rectangle (x0, x1) x (y0, y1).
struct AxisRect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
};

/// Complement of a closed simple polygon (interior plus edges removed).
struct PolygonComplement {
    std::vector<Point2> vertices;
};

enum class DomainKind { HalfPlane, PuncturedPlane, UnitDisk, Annulus, AxisRect, PolygonComplement };

std::string to_string(DomainKind k);

/// A planar open set X with the boundary-distance oracle dist(p, ∂X).
///
/// Values are immutable after construction and every member is pure.
class Domain {
public:
    using Shape = std::variant<HalfPlane, PuncturedPlane, UnitDisk, Annulus, AxisRect, PolygonComplement>;

    Domain(Shape shape);  // NOLINT(google-explicit-constructor)

    static Domain half_plane() { return Domain(HalfPlane{}); }
    static Domain punctured_plane() { return Domain(PuncturedPlane{}); }
    static Domain unit_disk() { return Domain(UnitDisk{}); }
    static Domain annulus(double r_in, double r_out) { return Domain(Annulus{r_in, r_out}); }
    static Domain axis_rect(double x0, double y0, double x1, double y1) { return Domain(AxisRect{x0, y0, x1, y1}); }
    static Domain polygon_complement(std::vector<Point2> vertices) {
        return Domain(PolygonComplement{std::move(vertices)});
    }

    /// Parses {"kind": ..., "params": {...}}. Throws Error(InvalidArgument) on malformed input.
    static Domain from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    DomainKind kind() const;
    const Shape& shape() const { return shape_; }
    bool is_convex() const;

    /// Open-set membership; boundary points are rejected.
    bool contains(Point2 p) const;

    /// dist(p, ∂X) for an interior point. Throws PointOutsideDomain otherwise.
    double boundary_distance(Point2 p) const;

    /// dist(p, ∂X) for any point, no membership check.
    double raw_boundary_distance(Point2 p) const;

    /// Unit gradient of dist(·, ∂X) at an interior point (where it is differentiable).
    Point2 boundary_distance_gradient(Point2 p) const;

    /// True iff the closed segment [p, q] lies in X. Throws PointOutsideDomain if an endpoint is outside.
    bool segment_in_domain(Point2 p, Point2 q) const;

    /// Same question answered by marching along the segment using the 1-Lipschitz property of the
    /// boundary distance. Exact-kind-independent; conservative near tangencies.
    bool segment_in_domain_sampled(Point2 p, Point2 q) const;

    /// Bounding box of X when X is bounded.
    std::optional<Box> bounding_box() const;

private:
    Shape shape_;
};

}  // namespace qhg
