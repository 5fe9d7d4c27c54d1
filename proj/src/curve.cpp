#include "qhg/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "qhg/error.hpp"

namespace qhg {

Arc::Arc(const Domain& domain, std::vector<Point2> points, double rel_tol) {
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 2) throw Error(ErrorKind::InvalidArgument, "an arc needs at least two distinct points");
    for (const auto& p : points)
        if (!domain.contains(p))
            throw Error(ErrorKind::ArcLeavesDomain,
                        "vertex (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") outside domain");
    cum_euclid_.reserve(points.size());
    cum_qh_.reserve(points.size());
    cum_euclid_.push_back(0.0);
    cum_qh_.push_back(0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!domain.segment_in_domain(points[i - 1], points[i]))
            throw Error(ErrorKind::ArcLeavesDomain, "segment " + std::to_string(i - 1) + " exits the domain");
        cum_euclid_.push_back(cum_euclid_.back() + distance(points[i - 1], points[i]));
        cum_qh_.push_back(cum_qh_.back() + segment_qh_length(domain, points[i - 1], points[i], rel_tol));
    }
    points_ = std::move(points);
}

double qh_length(const Domain& domain, const Arc& arc, double rel_tol) {
    const auto pts = arc.points();
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!domain.contains(pts[i - 1]) || !domain.contains(pts[i]) ||
            !domain.segment_in_domain(pts[i - 1], pts[i]))
            throw Error(ErrorKind::ArcLeavesDomain, "segment " + std::to_string(i - 1) + " exits the domain");
        total += segment_qh_length(domain, pts[i - 1], pts[i], rel_tol);
    }
    return total;
}

Point2 point_at_qh_length(const Domain& domain, const Arc& arc, double t) {
    const auto cum = arc.cum_qh();
    const double total = cum.back();
    if (!(t >= -kSnapTol && t <= total + kSnapTol))
        throw Error(ErrorKind::ParameterOutOfRange,
                    "t = " + std::to_string(t) + " outside [0, " + std::to_string(total) + "]");
    if (t <= 0.0) return arc.front();
    if (t >= total) return arc.back();

    // Segment k with cum[k] <= t < cum[k+1].
    const auto it = std::upper_bound(cum.begin(), cum.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - cum.begin()) - 1;
    const Point2 a = arc.points()[k];
    const Point2 b = arc.points()[k + 1];
    const double target = t - cum[k];
    const double seg = cum[k + 1] - cum[k];
    if (target <= 0.0) return a;
    if (target >= seg) return b;

    // Safeguarded Newton on F(s) = l_k([a, a + s(b-a)]) - target; F' = |b-a| / δ.
    const double len = distance(a, b);
    double lo = 0.0, hi = 1.0;
    double s = target / seg;
    for (int it_count = 0; it_count < 100; ++it_count) {
        const Point2 p = lerp(a, b, s);
        const double f = segment_qh_length(domain, a, p, 1e-12) - target;
        if (std::fabs(f) <= 1e-13 * std::max(1.0, seg)) return p;
        if (f > 0.0)
            hi = s;
        else
            lo = s;
        double next = s - f * domain.raw_boundary_distance(p) / len;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo < 1e-16) return p;
        s = next;
    }
    return lerp(a, b, s);
}

double qh_position(const Domain& domain, const Arc& arc, Point2 u) {
    const auto pts = arc.points();
    std::size_t best_k = 0;
    Point2 best_c = pts.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const Point2 c = closest_on_segment(u, pts[k], pts[k + 1]);
        const double d = distance(u, c);
        if (d < best_d) {
            best_d = d;
            best_c = c;
            best_k = k;
        }
    }
    const double dc = domain.raw_boundary_distance(best_c);
    if (!(best_d <= kSnapTol * dc))
        throw Error(ErrorKind::PointNotOnArc, "point is " + std::to_string(best_d / dc) + " qh-units off the arc");
    return arc.cum_qh()[best_k] + segment_qh_length(domain, pts[best_k], best_c, 1e-12);
}

Arc subarc_between(const Domain& domain, const Arc& arc, double t0, double t1) {
    if (std::fabs(t1 - t0) <= kSnapTol) throw Error(ErrorKind::InvalidArgument, "degenerate subarc");
    const bool forward = t0 < t1;
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(arc.qh_length(), std::max(t0, t1));
    std::vector<Point2> pts;
    pts.push_back(point_at_qh_length(domain, arc, lo));
    const auto cum = arc.cum_qh();
    for (std::size_t k = 0; k < arc.size(); ++k)
        if (cum[k] > lo && cum[k] < hi) pts.push_back(arc.points()[k]);
    pts.push_back(point_at_qh_length(domain, arc, hi));
    if (!forward) std::reverse(pts.begin(), pts.end());
    return Arc(domain, std::move(pts));
}

Arc subarc(const Domain& domain, const Arc& arc, Point2 u, Point2 v) {
    return subarc_between(domain, arc, qh_position(domain, arc, u), qh_position(domain, arc, v));
}

Arc reversed(const Domain& domain, const Arc& arc) {
    std::vector<Point2> pts(arc.points().rbegin(), arc.points().rend());
    return Arc(domain, std::move(pts));
}

void write_points_csv(std::ostream& out, std::span<const Point2> points) {
    out << "x,y\n";
    char buf[64];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        out << buf;
    }
}

void write_arc_csv(std::ostream& out, const Arc& arc) { write_points_csv(out, arc.points()); }

std::vector<Point2> read_points_csv(std::istream& in) {
    std::vector<Point2> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.find_first_of("xX") != std::string::npos) continue;  // header
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(lineno) + ": expected x,y");
        try {
            std::size_t used = 0;
            const double x = std::stod(line.substr(0, comma), &used);
            const double y = std::stod(line.substr(comma + 1));
            pts.push_back({x, y});
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(lineno) + ": not numeric");
        }
    }
    return pts;
}

}  // namespace qhg
