#pragma once

#include <optional>
#include <vector>

#include "qhg/curve.hpp"
#include "qhg/qh_engine.hpp"

namespace qhg {

/// Sound shortness test: l_k(arc) <= k_lower + h (with 1e-9 relative rounding allowance).
/// h may be zero or negative here; constructions require h > 0.
bool is_h_short(const ShortArcCert& cert, double h);

struct SandwichSample {
    Point2 z;
    double t = 0.0;         // arclength position of z
    double k_xz = 0.0;      // midpoint estimate
    double product = 0.0;   // (z|y)_x
    double slack = 0.0;
    double lower_margin = 0.0;  // (z|y)_x - (k(x,z) - h/2) + slack
    double upper_margin = 0.0;  // k(x,z) - (z|y)_x + slack
    bool pass = false;
};

struct SandwichReport {
    double h = 0.0;
    double tol = 0.0;
    std::vector<SandwichSample> samples;
    bool all_pass = true;
};

/// Checks k(x,z) - h/2 <= (z|y)_x <= k(x,z) at `sample_count` interior points z placed at
/// equispaced arclengths. k(x,z) and k(z,y) come from fresh engine calls at `tol`, with their
/// upper bounds tightened by the subarc lengths; slack is the sum of the three bracket widths.
SandwichReport verify_product_sandwich(const Domain& domain, const ShortArcCert& cert, double h,
                                       std::size_t sample_count, double tol, const EngineOptions& options = {});

/// Certificate for the subarc from u to v. k_lower comes from a fresh engine call at h/4; the
/// returned bracket width is the slack of the re-certification (l <= k_lower + h + width).
/// Throws PointNotOnArc, or ShortnessNotCertified when even the slack is exceeded.
ShortArcCert subarc_is_short(const Domain& domain, const ShortArcCert& cert, Point2 u, Point2 v, double h,
                             const EngineOptions& options = {});

/// Arclength-preserving correspondence src -> dst fixed by a pair of anchors.
struct LengthMap {
    Arc src;
    Arc dst;
    double src_anchor_t = 0.0;
    double dst_anchor_t = 0.0;
    int orientation = 1;

    /// Arclength position on dst of the image of arclength position t on src.
    double image_position(double t) const { return dst_anchor_t + orientation * (t - src_anchor_t); }
};

/// Allowance for range checks on arclength positions.
inline constexpr double kRangeTol = 1e-9;

/// Throws PointNotOnArc (anchors), InvalidArgument (orientation not ±1) or RangeOverflow (the
/// image of src does not fit in dst).
LengthMap make_length_map(const Domain& domain, const Arc& src, const Arc& dst, Point2 src_anchor, Point2 dst_anchor,
                          int orientation = 1);

/// Throws PointNotOnArc or RangeOverflow.
Point2 apply_length_map(const Domain& domain, const LengthMap& map, Point2 u);

/// Image of the src point at arclength t.
Point2 apply_length_map_at(const Domain& domain, const LengthMap& map, double t);

/// Split of a side x -> y at w and p: prime = [x,w], star = [w,p], doubleprime = [p,y].
struct Subdivision {
    Arc side;
    Point2 w, p;
    double t_w = 0.0;
    double t_p = 0.0;
    /// Requested lengths of the first and last pieces (Gromov products at the two endpoints).
    double first_cut = 0.0;
    double last_cut = 0.0;
    /// Pieces shorter than kSnapTol are absent.
    std::optional<Arc> prime, star, doubleprime;
    double prime_length = 0.0;
    double star_length = 0.0;
    double doubleprime_length = 0.0;
    bool star_within = true;  // star_length <= h + slack
};

struct TriangleSubdivision {
    Point2 z, x, y;
    double k_zx = 0.0, k_zy = 0.0, k_xy = 0.0;
    double xy_z = 0.0;  // (x|y)_z
    double zy_x = 0.0;  // (z|y)_x
    double zx_y = 0.0;  // (z|x)_y
    double slack = 0.0;
    double h = 0.0;
    Subdivision alpha;  // x -> y
    Subdivision beta;   // z -> x
    Subdivision gamma;  // z -> y

    bool stars_within() const { return alpha.star_within && beta.star_within && gamma.star_within; }
};

/// Subdivides the triangle with sides beta: z -> x, gamma: z -> y, alpha: x -> y. Products use
/// the certificates' bracket midpoints; slack is the sum of the three bracket widths.
/// Throws NotATriangle or CutOverflow.
TriangleSubdivision subdivide_triangle(const Domain& domain, const ShortArcCert& beta, const ShortArcCert& gamma,
                                       const ShortArcCert& alpha, double h);

}  // namespace qhg
