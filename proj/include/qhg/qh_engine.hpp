#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qhg/curve.hpp"
#include "qhg/error.hpp"
#include "qhg/domain.hpp"

namespace qhg {

// ---------------------------------------------------------------------------------------------
// Graph discretization

struct GraphOptions {
    /// Absolute cap on the local grid pitch.
    double resolution = 0.0;
    /// Local pitch never exceeds relative_pitch * δ_X (1/4 at the base level).
    double relative_pitch = 0.25;
    /// Nodes with δ_X below this are omitted. Defaults to resolution / 8 when unset.
    std::optional<double> min_boundary_distance;
    /// Optional radial limits (used for punctured_plane working annuli).
    std::optional<double> r_min;
    std::optional<double> r_max;
    /// Cells for which this returns a lower bound above `prune_above` are dropped.
    /// Arguments: cell center, half diagonal.
    std::function<double(Point2, double)> prune_lower_bound;
    double prune_above = 0.0;
    /// Hard limit on node count; exceeding it throws ToleranceNotReached.
    std::size_t max_nodes = 4'000'000;
};

/// Adaptive quadtree graph with a generalized 16-neighbor stencil: every pair of leaf centers
/// within sqrt(5) local pitches is joined when the segment between them stays in the domain.
/// Immutable once built.
struct QhGraph {
    struct Edge {
        std::size_t to;
        double weight;
    };
    std::vector<Point2> nodes;  // sorted by (x, then y)
    std::vector<double> pitch;  // local cell size per node
    std::vector<std::vector<Edge>> adjacency;
    double resolution = 0.0;
    double relative_pitch = 0.25;
    Box region;

    std::size_t edge_count() const;
    /// Adds a node joined by straight connector edges to nearby nodes; returns its index.
    std::size_t add_terminal(const Domain& domain, Point2 p);
    /// Component label per node.
    std::vector<std::size_t> components() const;
};

/// Throws InvalidArgument (resolution <= 0) or EmptyRegion. Does not check connectivity.
QhGraph build_graph(const Domain& domain, const Box& region, const GraphOptions& options);

/// Convenience form with default options; additionally verifies the graph is connected and
/// throws DisconnectedGraph otherwise.
QhGraph build_graph(const Domain& domain, const Box& region, double resolution);

/// Shortest path between two nodes; empty when unreachable. Ties are broken by node order.
std::vector<std::size_t> dijkstra_path(const QhGraph& graph, std::size_t source, std::size_t target);

// ---------------------------------------------------------------------------------------------
// Path refinement

struct RefineOptions {
    /// Final bound on the quasihyperbolic length of each polyline segment.
    double target_segment = 0.1;
    /// Shortcut search window in vertices.
    std::size_t shortcut_window = 64;
    int max_sweeps = 400;
    /// Coordinate descent stops once a sweep gains less than this (absolute).
    double min_sweep_gain = 1e-11;
};

/// Local shortcutting followed by coarse-to-fine vertex insertion and coordinate descent
/// (per-vertex step bounded by δ_X/4). Endpoints stay fixed; every accepted move keeps the
/// path inside the domain; the result is never longer than the input.
Arc refine_path(const Domain& domain, const Arc& arc, const RefineOptions& options = {});

/// The shortcutting stage on its own.
Arc shortcut_path(const Domain& domain, const Arc& arc, std::size_t window = 64);

// ---------------------------------------------------------------------------------------------
// Distance estimates and short arcs

struct DistanceEstimate {
    double lower = 0.0;
    double upper = 0.0;
    /// Path realizing `upper`; empty when the endpoints coincide.
    std::optional<Arc> path;
    /// Refined upper bound per refinement level (non-increasing).
    std::vector<double> level_uppers;
    std::vector<std::size_t> level_nodes;
    std::vector<double> level_resolutions;
    /// True when the straight segment already met the tolerance against the j-distance bound.
    bool direct = false;
    double tol = 0.0;

    double mid() const { return 0.5 * (lower + upper); }
    /// Bounds |mid() - k_X| when the bracket is valid.
    double half_width() const { return 0.5 * (upper - lower); }
};

struct EngineOptions {
    /// Refinement cap (number of halvings after the base level).
    int max_halvings = 6;
    /// Radial working limits for unbounded domains.
    std::optional<double> r_min;
    std::optional<double> r_max;
};

/// Estimate of k_X(x, y) with lower <= k_X <= upper (lower from the j-distance bound and
/// refinement convergence). Throws PointOutsideDomain, InvalidArgument (tol <= 0),
/// ToleranceNotReached or DisconnectedGraph.
DistanceEstimate qh_distance(const Domain& domain, Point2 x, Point2 y, double tol,
                             const EngineOptions& options = {});

/// Certificate that an arc is h-short: l_k(arc) <= k_lower + h_achieved and k_lower <= k_upper <= l_k(arc).
struct ShortArcCert {
    Arc arc;
    double h_achieved = 0.0;
    double k_lower = 0.0;
    double k_upper = 0.0;
};

/// Thrown by short_arc when refinement cannot reach the requested shortness.
class ShortnessNotCertified : public Error {
public:
    ShortnessNotCertified(ShortArcCert best, const std::string& what)
        : Error(ErrorKind::ShortnessNotCertified, what), best_(std::move(best)) {}
    const ShortArcCert& best() const { return best_; }

private:
    ShortArcCert best_;
};

/// An h-short arc from x to y (h > 0, x != y). Runs qh_distance with tol = h/4.
ShortArcCert short_arc(const Domain& domain, Point2 x, Point2 y, double h, const EngineOptions& options = {});

}  // namespace qhg
