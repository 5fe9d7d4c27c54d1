#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qhg/gromov.hpp"
#include "qhg/qh_engine.hpp"
#include "qhg/shortarc.hpp"

namespace qhg {

struct HarnessOptions {
    /// Engine tolerance for products, displacements and the delta_hat matrix.
    double tol = 1e-2;
    std::uint64_t seed = 0;
    /// Displacement suprema start at this many equispaced samples and double until the sup
    /// moves by less than `sup_change` (or `max_displacement_samples` is reached).
    std::size_t displacement_samples = 32;
    std::size_t max_displacement_samples = 256;
    double sup_change = 1e-3;
    std::size_t composition_samples = 32;
    /// Arc points for delta_hat are taken at arclength pitch h; the pitch is widened when the
    /// set would exceed this many points.
    std::size_t delta_max_points = 160;
    std::uint64_t delta_sample_budget = 1'000'000;
    EngineOptions engine;
};

/// Family of anchored length maps f_ij : arcs[i] -> arcs[j] (i <= j), orientation +1,
/// with anchors[i] |-> anchors[j] at the arclength level.
struct MapFamily {
    std::vector<Arc> arcs;
    std::vector<double> anchors;
    /// Row-major n x n; filled for i <= j.
    std::vector<std::optional<LengthMap>> maps;

    std::size_t size() const { return arcs.size(); }
    const LengthMap& at(std::size_t i, std::size_t j) const { return *maps[i * size() + j]; }
};

/// Throws RangeOverflow when some f_ij (i <= j) would leave arcs[j].
MapFamily make_map_family(const Domain& domain, std::vector<Arc> arcs, std::vector<double> anchors);

struct DisplacementEntry {
    std::size_t i = 0, j = 0;
    /// sup over samples of the midpoint estimate of k(f_ij(u), u), and where it is attained.
    double sup = 0.0;
    Point2 witness;
    std::size_t samples = 0;
    double bound = 0.0;
    double slack = 0.0;
    double margin = 0.0;  // bound + slack - sup
    bool pass = true;
};

/// One row per i <= j.
std::vector<DisplacementEntry> displacement_report(const Domain& domain, const MapFamily& family, double bound,
                                                   double slack, const HarnessOptions& options);

struct CompositionReport {
    double max_error = 0.0;
    std::size_t triples = 0;
    std::size_t samples = 0;
    double tolerance = 2e-8;
    bool pass = true;
};

/// For i <= j <= m, compares arclength positions of f_im(u) and f_jm(f_ij(u)) on arcs[m], and
/// checks f_ii = id.
CompositionReport composition_check(const Domain& domain, const MapFamily& family, std::size_t samples = 32);

struct DeltaSummary {
    DeltaEstimate estimate;
    /// Arclength pitch actually used on the arcs.
    double pitch = 0.0;
    double tol = 0.0;
};

/// delta_hat over the given anchor points plus samples of every arc at pitch h (widened to fit
/// options.delta_max_points).
DeltaSummary run_delta(const Domain& domain, std::vector<Point2> anchors, const std::vector<const Arc*>& arcs, double h,
                       const HarnessOptions& options);

struct Lemma31Run {
    Point2 x;
    std::vector<Point2> prefix;
    double h = 0.0;
    int m_max = 0;
    /// (u_i|u_j)_x over the whole prefix.
    std::vector<std::vector<double>> prefix_products;
    double product_slack = 0.0;
    /// selected[m-1] = N(m) (0-based prefix index).
    std::vector<std::size_t> selected;
    /// h-short arcs x -> u_N(m).
    std::vector<ShortArcCert> alphas;
    /// beta_m = alpha_N(m) trimmed to length m; maps f_mn anchored at x.
    MapFamily maps;
    DeltaSummary delta;
    double bound = 0.0;  // 4 delta_hat + 2h
    double slack = 0.0;
    std::vector<DisplacementEntry> displacements;
    CompositionReport composition;
    /// max |l(beta_m) - m|.
    double trim_error = 0.0;
    HarnessOptions options;

    bool pass() const;
};

/// Throws InvalidArgument (h <= 0, m_max < 1), PrefixTooShort, or engine errors.
Lemma31Run lemma31_construct(const Domain& domain, Point2 x, std::vector<Point2> prefix, double h, int m_max,
                             const HarnessOptions& options = {});

struct DivergenceRow {
    std::size_t index = 0;  // prefix index
    double k_x = 0.0;       // k(x_i, s_1)
    double k_y = 0.0;       // k(y_i, s_1)
};

struct Theorem13Run {
    Point2 z;
    std::vector<Point2> prefix_a, prefix_b;
    double h = 0.0;
    int i_max = 0;
    /// (x_i|y_i)_z over the whole common prefix, and max - first.
    std::vector<double> cross_products;
    double cross_growth = 0.0;
    std::vector<std::size_t> selected;
    std::vector<ShortArcCert> betas;   // z -> x_i
    std::vector<ShortArcCert> gammas;  // z -> y_i
    std::vector<ShortArcCert> alphas;  // x_i -> y_i
    std::vector<TriangleSubdivision> subdivisions;
    bool shortness_pass = true;
    bool stars_pass = true;
    Point2 s1;
    std::vector<DivergenceRow> divergence;
    double divergence_slack = 0.0;
    bool divergence_pass = true;
    /// f_ij : alpha_i -> alpha_j with w_i |-> w_j.
    MapFamily maps;
    CompositionReport composition;
    DeltaSummary delta;
    double bound = 0.0;  // 12 (delta_hat + h)
    double slack = 0.0;
    std::vector<DisplacementEntry> displacements;
    HarnessOptions options;

    bool pass() const;
};

/// Throws InvalidArgument, SequencesEquivalent, NormalizationFailed, RangeOverflow or engine errors.
Theorem13Run theorem13_construct(const Domain& domain, Point2 z, std::vector<Point2> prefix_a,
                                 std::vector<Point2> prefix_b, double h, int i_max, const HarnessOptions& options = {});

}  // namespace qhg
