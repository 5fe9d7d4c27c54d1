#include "qhg/qh_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qhg/error.hpp"
#include "qhg/quadrature.hpp"

namespace qhg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cheap admissible polylines (segment, then one-bend detours on either side) for an initial
// upper bound that bounds the search region.
double initial_upper_bound(const Domain& domain, Point2 x, Point2 y) {
    if (domain.segment_in_domain(x, y)) return segment_qh_length(domain, x, y, 1e-8);
    const Point2 mid = lerp(x, y, 0.5);
    const Point2 d = y - x;
    const Point2 normal{-d.y, d.x};
    double best = kInf;
    for (const double s : {0.5, 1.0, 2.0, 4.0}) {
        for (const double sign : {1.0, -1.0}) {
            const Point2 m = mid + (sign * s) * normal;
            if (!domain.contains(m) || !domain.segment_in_domain(x, m) || !domain.segment_in_domain(m, y)) continue;
            best = std::min(best, segment_qh_length(domain, x, m, 1e-8) + segment_qh_length(domain, m, y, 1e-8));
        }
    }
    return best;
}

// Region that contains every point of every path of quasihyperbolic length <= budget:
// j(x, p) <= k(x, p) forces |x - p| <= δ(x)(e^budget - 1).
Box search_box(const Domain& domain, Point2 x, Point2 y, double budget, const EngineOptions& options) {
    const double dx = domain.boundary_distance(x);
    const double dy = domain.boundary_distance(y);
    Box box;
    if (std::isfinite(budget) && budget < 600.0) {
        const double rx = dx * std::expm1(budget);
        const double ry = dy * std::expm1(budget);
        box = intersect(Box{{x.x - rx, x.y - rx}, {x.x + rx, x.y + rx}}, Box{{y.x - ry, y.y - ry}, {y.x + ry, y.y + ry}});
    } else {
        const double r = 4.0 * distance(x, y) + 4.0 * std::max(dx, dy);
        box = Box{{std::min(x.x, y.x) - r, std::min(x.y, y.y) - r}, {std::max(x.x, y.x) + r, std::max(x.y, y.y) + r}};
    }
    if (const auto b = domain.bounding_box()) box = intersect(box, *b);
    if (options.r_max) box = intersect(box, Box{{-*options.r_max, -*options.r_max}, {*options.r_max, *options.r_max}});
    return box;
}

double target_segment_for(double tol, double length) {
    // Polyline excess over a geodesic of curvature <= 1 (in quasihyperbolic units) is about
    // length * sigma^2 / 24; aim the base level at tol / 2.
    return std::clamp(std::sqrt(12.0 * tol / std::max(length, 1.0)), 0.02, 0.5);
}

}  // namespace

DistanceEstimate qh_distance(const Domain& domain, Point2 x, Point2 y, double tol, const EngineOptions& options) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    const double dx = domain.boundary_distance(x);
    const double dy = domain.boundary_distance(y);
    DistanceEstimate est;
    est.tol = tol;
    if (x == y) return est;

    const double jxy = j_distance(domain, x, y);
    if (domain.segment_in_domain(x, y)) {
        const double seg = segment_qh_length(domain, x, y);
        if (seg - jxy <= tol) {
            est.lower = std::min(jxy, seg);
            est.upper = seg;
            est.path = Arc::segment(domain, x, y);
            est.direct = true;
            est.level_uppers.push_back(seg);
            return est;
        }
    }

    double budget = initial_upper_bound(domain, x, y);
    const double sigma0 = target_segment_for(tol, std::isfinite(budget) ? budget : jxy);
    double best = kInf;
    std::optional<Arc> best_path;
    double previous = kInf;

    for (int level = 0; level <= options.max_halvings; ++level) {
        const double margin_budget = std::isfinite(budget) ? 1.05 * budget + 0.25 : kInf;
        const Box box = search_box(domain, x, y, margin_budget, options);
        const double scale = std::ldexp(1.0, -level);

        GraphOptions go;
        go.resolution = std::max(box.width(), box.height()) / 8.0 * scale;
        go.relative_pitch = 0.25 * scale;
        go.r_min = options.r_min;
        go.r_max = options.r_max;
        if (std::isfinite(margin_budget)) {
            // k(x,p) + k(p,y) <= budget and k >= j force δ(p) >= sqrt(δx δy) e^{-budget/2}.
            go.min_boundary_distance = 0.5 * std::sqrt(dx * dy) * std::exp(-0.5 * margin_budget);
            go.prune_above = margin_budget;
            go.prune_lower_bound = [&domain, x, y, dx, dy](Point2 c, double r) {
                const double dc_max = domain.raw_boundary_distance(c) + r;
                const double lx = std::log1p(std::max(0.0, distance(x, c) - r) / std::min(dx, dc_max));
                const double ly = std::log1p(std::max(0.0, distance(y, c) - r) / std::min(dy, dc_max));
                return lx + ly;
            };
        } else {
            go.min_boundary_distance = 0.25 * std::min(dx, dy) * scale;
        }

        QhGraph graph = build_graph(domain, box, go);
        const std::size_t sx = graph.add_terminal(domain, x);
        const std::size_t sy = graph.add_terminal(domain, y);
        const auto node_path = dijkstra_path(graph, sx, sy);
        if (node_path.empty())
            throw Error(ErrorKind::DisconnectedGraph,
                        "endpoints fall in different graph components at level " + std::to_string(level));
        std::vector<Point2> pts;
        pts.reserve(node_path.size());
        for (const auto v : node_path) pts.push_back(graph.nodes[v]);

        RefineOptions ro;
        ro.target_segment = sigma0 * scale;
        ro.min_sweep_gain = 1e-4 * tol;
        Arc refined = refine_path(domain, Arc(domain, std::move(pts)), ro);
        if (refined.qh_length() < best) {
            best = refined.qh_length();
            best_path = std::move(refined);
        }
        est.level_uppers.push_back(best);
        est.level_nodes.push_back(graph.nodes.size());
        est.level_resolutions.push_back(go.resolution);

        if (level >= 1 && previous - best <= tol) {
            est.upper = best;
            est.lower = std::min(best, std::max(jxy, previous - tol));
            est.path = std::move(best_path);
            return est;
        }
        previous = best;
        budget = std::min(budget, best);
    }
    throw Error(ErrorKind::ToleranceNotReached,
                "refinement cap of " + std::to_string(options.max_halvings) + " halvings reached; last upper " +
                    std::to_string(best));
}

ShortArcCert short_arc(const Domain& domain, Point2 x, Point2 y, double h, const EngineOptions& options) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "short arcs are constructed for h > 0 only");
    if (x == y) throw Error(ErrorKind::InvalidArgument, "short arc endpoints must differ");
    const auto est = qh_distance(domain, x, y, h / 4.0, options);
    ShortArcCert cert{*est.path, 0.0, est.lower, est.upper};
    cert.k_upper = std::min(est.upper, cert.arc.qh_length());
    cert.h_achieved = std::max(0.0, cert.arc.qh_length() - cert.k_lower);
    if (cert.h_achieved > h)
        throw ShortnessNotCertified(cert, "achieved " + std::to_string(cert.h_achieved) + " > h = " + std::to_string(h));
    return cert;
}

}  // namespace qhg
