#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "qhg/domain.hpp"
#include "qhg/quadrature.hpp"

namespace qhg {

/// Points on an arc are identified by quasihyperbolic arclength within this tolerance.
inline constexpr double kSnapTol = 1e-9;

/// An oriented polyline in a domain with cached Euclidean and quasihyperbolic length tables.
///
/// Invariants: at least two vertices, consecutive vertices distinct, every vertex and segment
/// inside the domain the arc was built against, and both cumulative tables strictly increasing.
class Arc {
public:
    /// Drops exact consecutive duplicates, then validates. Throws InvalidArgument (fewer than two
    /// distinct vertices) or ArcLeavesDomain.
    Arc(const Domain& domain, std::vector<Point2> points, double rel_tol = kQuadratureRelTol);

    /// Straight segment [a, b].
    static Arc segment(const Domain& domain, Point2 a, Point2 b) { return Arc(domain, {a, b}); }

    std::span<const Point2> points() const { return points_; }
    std::span<const double> cum_euclid() const { return cum_euclid_; }
    std::span<const double> cum_qh() const { return cum_qh_; }
    std::size_t size() const { return points_.size(); }
    Point2 front() const { return points_.front(); }
    Point2 back() const { return points_.back(); }

    double euclidean_length() const { return cum_euclid_.back(); }
    double qh_length() const { return cum_qh_.back(); }

private:
    std::vector<Point2> points_;
    std::vector<double> cum_euclid_;
    std::vector<double> cum_qh_;
};

inline double euclidean_length(const Arc& arc) { return arc.euclidean_length(); }

/// Recomputes the quasihyperbolic length of the arc's polyline against `domain`.
/// Throws ArcLeavesDomain if a segment exits the domain.
double qh_length(const Domain& domain, const Arc& arc, double rel_tol = kQuadratureRelTol);

/// The point u with l_k(arc|[start, u]) = t. Throws ParameterOutOfRange unless 0 <= t <= length
/// (up to kSnapTol).
Point2 point_at_qh_length(const Domain& domain, const Arc& arc, double t);

/// Quasihyperbolic arclength position of `u` on the arc. Throws PointNotOnArc if u is farther
/// than kSnapTol (in quasihyperbolic units) from the polyline.
double qh_position(const Domain& domain, const Arc& arc, Point2 u);

/// The piece between arclength positions t0 and t1, oriented from t0 to t1.
/// Throws InvalidArgument when |t1 - t0| <= kSnapTol.
Arc subarc_between(const Domain& domain, const Arc& arc, double t0, double t1);

/// The closed subarc between two points of the arc, oriented from u to v.
Arc subarc(const Domain& domain, const Arc& arc, Point2 u, Point2 v);

Arc reversed(const Domain& domain, const Arc& arc);

/// CSV with header `x,y` and one vertex per row.
void write_arc_csv(std::ostream& out, const Arc& arc);
void write_points_csv(std::ostream& out, std::span<const Point2> points);
/// Reads a point list in the same format. Throws InvalidArgument on malformed rows.
std::vector<Point2> read_points_csv(std::istream& in);

}  // namespace qhg
