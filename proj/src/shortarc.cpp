#include "qhg/shortarc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhg/error.hpp"

namespace qhg {

namespace {

constexpr double kRounding = 1e-9;

// Bracket for k(a, b) where b lies at arclength `along` from a on some arc.
DistanceEstimate bracket_along(const Domain& domain, Point2 a, Point2 b, double along, double tol,
                               const EngineOptions& options) {
    DistanceEstimate e;
    if (a == b) return e;
    e = qh_distance(domain, a, b, tol, options);
    e.upper = std::min(e.upper, along);
    e.lower = std::min(e.lower, e.upper);
    return e;
}

bool same_point(const Domain& domain, Point2 a, Point2 b) {
    return distance(a, b) <= kSnapTol * std::max(domain.raw_boundary_distance(a), 1e-300);
}

// Clamps a requested cut length into [0, length]; beyond slack the certificate is inconsistent.
double clamp_cut(double cut, double length, double slack, const char* what) {
    if (cut < -slack || cut > length + slack)
        throw Error(ErrorKind::CutOverflow, std::string(what) + " = " + std::to_string(cut) + " outside [0, " +
                                                std::to_string(length) + "] beyond slack " + std::to_string(slack));
    return std::clamp(cut, 0.0, length);
}

std::optional<Arc> piece(const Domain& domain, const Arc& side, double t0, double t1) {
    if (t1 - t0 <= kSnapTol) return std::nullopt;
    return subarc_between(domain, side, t0, t1);
}

Subdivision subdivide_side(const Domain& domain, const Arc& side, double first_cut, double last_cut, double slack,
                           double h) {
    Subdivision s{side, {}, {}, 0.0, 0.0, first_cut, last_cut, {}, {}, {}, 0.0, 0.0, 0.0, true};
    const double len = side.qh_length();
    s.t_w = clamp_cut(first_cut, len, slack, "first cut");
    s.t_p = len - clamp_cut(last_cut, len, slack, "last cut");
    if (s.t_p < s.t_w) {
        // Cuts overlap only through rounding of the products (their sum is the estimated side distance).
        if (s.t_w - s.t_p > slack)
            throw Error(ErrorKind::CutOverflow, "cuts overlap by " + std::to_string(s.t_w - s.t_p));
        s.t_p = s.t_w = 0.5 * (s.t_w + s.t_p);
    }
    s.w = point_at_qh_length(domain, side, s.t_w);
    s.p = point_at_qh_length(domain, side, s.t_p);
    s.prime = piece(domain, side, 0.0, s.t_w);
    s.star = piece(domain, side, s.t_w, s.t_p);
    s.doubleprime = piece(domain, side, s.t_p, len);
    s.prime_length = s.prime ? s.prime->qh_length() : 0.0;
    s.star_length = s.star ? s.star->qh_length() : 0.0;
    s.doubleprime_length = s.doubleprime ? s.doubleprime->qh_length() : 0.0;
    s.star_within = s.star_length <= h + slack;
    return s;
}

}  // namespace

bool is_h_short(const ShortArcCert& cert, double h) {
    const double len = cert.arc.qh_length();
    return len <= cert.k_lower + h + kRounding * std::max(1.0, len);
}

SandwichReport verify_product_sandwich(const Domain& domain, const ShortArcCert& cert, double h,
                                       std::size_t sample_count, double tol, const EngineOptions& options) {
    SandwichReport report{h, tol, {}, true};
    const Arc& arc = cert.arc;
    const Point2 x = arc.front();
    const Point2 y = arc.back();
    const double len = arc.qh_length();
    const double kxy = 0.5 * (cert.k_lower + cert.k_upper);
    const double wxy = cert.k_upper - cert.k_lower;
    for (std::size_t i = 1; i <= sample_count; ++i) {
        SandwichSample s;
        s.t = len * static_cast<double>(i) / static_cast<double>(sample_count + 1);
        s.z = point_at_qh_length(domain, arc, s.t);
        const auto xz = bracket_along(domain, x, s.z, s.t, tol, options);
        const auto zy = bracket_along(domain, s.z, y, len - s.t, tol, options);
        s.k_xz = xz.mid();
        s.product = 0.5 * (s.k_xz + kxy - zy.mid());
        s.slack = (xz.upper - xz.lower) + (zy.upper - zy.lower) + wxy;
        s.lower_margin = s.product - (s.k_xz - 0.5 * h) + s.slack;
        s.upper_margin = s.k_xz - s.product + s.slack;
        s.pass = s.lower_margin >= 0.0 && s.upper_margin >= 0.0;
        report.all_pass = report.all_pass && s.pass;
        report.samples.push_back(s);
    }
    return report;
}

ShortArcCert subarc_is_short(const Domain& domain, const ShortArcCert& cert, Point2 u, Point2 v, double h,
                             const EngineOptions& options) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
    const double tu = qh_position(domain, cert.arc, u);
    const double tv = qh_position(domain, cert.arc, v);
    const double len = cert.arc.qh_length();
    if ((std::fabs(tu) <= kSnapTol && std::fabs(tv - len) <= kSnapTol)) return cert;
    Arc sub = subarc_between(domain, cert.arc, tu, tv);
    const double sub_len = sub.qh_length();
    const auto e = bracket_along(domain, sub.front(), sub.back(), sub_len, h / 4.0, options);
    ShortArcCert out{std::move(sub), 0.0, e.lower, e.upper};
    out.h_achieved = std::max(0.0, sub_len - e.lower);
    const double slack = e.upper - e.lower;
    if (out.h_achieved > h + slack + kRounding * std::max(1.0, sub_len))
        throw ShortnessNotCertified(out, "subarc shortness " + std::to_string(out.h_achieved) + " exceeds h + slack = " +
                                             std::to_string(h + slack));
    return out;
}

LengthMap make_length_map(const Domain& domain, const Arc& src, const Arc& dst, Point2 src_anchor, Point2 dst_anchor,
                          int orientation) {
    if (orientation != 1 && orientation != -1)
        throw Error(ErrorKind::InvalidArgument, "orientation must be +1 or -1");
    LengthMap map{src, dst, qh_position(domain, src, src_anchor), qh_position(domain, dst, dst_anchor), orientation};
    const double a = map.image_position(0.0);
    const double b = map.image_position(src.qh_length());
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    if (lo < -kRangeTol || hi > dst.qh_length() + kRangeTol)
        throw Error(ErrorKind::RangeOverflow, "image range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                  "] exceeds target length " + std::to_string(dst.qh_length()));
    return map;
}

Point2 apply_length_map_at(const Domain& domain, const LengthMap& map, double t) {
    if (t < -kRangeTol || t > map.src.qh_length() + kRangeTol)
        throw Error(ErrorKind::RangeOverflow, "source position " + std::to_string(t) + " outside the source arc");
    const double image = map.image_position(t);
    if (image < -kRangeTol || image > map.dst.qh_length() + kRangeTol)
        throw Error(ErrorKind::RangeOverflow, "image position " + std::to_string(image) + " outside the target arc");
    return point_at_qh_length(domain, map.dst, std::clamp(image, 0.0, map.dst.qh_length()));
}

Point2 apply_length_map(const Domain& domain, const LengthMap& map, Point2 u) {
    return apply_length_map_at(domain, map, qh_position(domain, map.src, u));
}

TriangleSubdivision subdivide_triangle(const Domain& domain, const ShortArcCert& beta, const ShortArcCert& gamma,
                                       const ShortArcCert& alpha, double h) {
    const Point2 z = beta.arc.front();
    const Point2 x = alpha.arc.front();
    const Point2 y = alpha.arc.back();
    if (!same_point(domain, gamma.arc.front(), z) || !same_point(domain, beta.arc.back(), x) ||
        !same_point(domain, gamma.arc.back(), y))
        throw Error(ErrorKind::NotATriangle, "sides do not share endpoints (beta z->x, gamma z->y, alpha x->y)");
    if (same_point(domain, z, x) || same_point(domain, z, y) || same_point(domain, x, y))
        throw Error(ErrorKind::NotATriangle, "triangle vertices coincide");

    const double k_zx = 0.5 * (beta.k_lower + beta.k_upper);
    const double k_zy = 0.5 * (gamma.k_lower + gamma.k_upper);
    const double k_xy = 0.5 * (alpha.k_lower + alpha.k_upper);
    const double slack =
        (beta.k_upper - beta.k_lower) + (gamma.k_upper - gamma.k_lower) + (alpha.k_upper - alpha.k_lower);
    const double xy_z = 0.5 * (k_zx + k_zy - k_xy);
    const double zy_x = 0.5 * (k_zx + k_xy - k_zy);
    const double zx_y = 0.5 * (k_zy + k_xy - k_zx);
    // A side A -> B opposite C: first piece (C|B)_A, last piece (C|A)_B.
    TriangleSubdivision t{z,
                          x,
                          y,
                          k_zx,
                          k_zy,
                          k_xy,
                          xy_z,
                          zy_x,
                          zx_y,
                          slack,
                          h,
                          subdivide_side(domain, alpha.arc, zy_x, zx_y, slack, h),
                          subdivide_side(domain, beta.arc, xy_z, zy_x, slack, h),
                          subdivide_side(domain, gamma.arc, xy_z, zx_y, slack, h)};
    return t;
}

}  // namespace qhg
