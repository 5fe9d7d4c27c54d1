#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhg/error.hpp"
#include "qhg/gromov.hpp"
#include "qhg/shortarc.hpp"

using namespace qhg;

namespace {

const double e = std::numbers::e;

ShortArcCert vertical(const Domain& h, double y0, double y1) {
    // The vertical segment is the geodesic, so its length is an exact lower bound.
    Arc a = Arc::segment(h, {0, y0}, {0, y1});
    const double k = oracle::log_ratio(y0, y1);
    return {std::move(a), 0.0, k, k};
}

}  // namespace

TEST_CASE("h-short predicate") {
    const auto h = Domain::half_plane();
    const auto c = vertical(h, 1, e);
    CHECK(is_h_short(c, 0.0));
    CHECK(is_h_short(c, 0.1));
    CHECK_FALSE(is_h_short(c, -0.1));

    // Out 0.25 at height 1, up the ray at x = 0.25, back 0.25 at height e.
    const Arc detour(h, {{0, 1}, {0.25, 1}, {0.25, e}, {0, e}});
    const double closed = 0.25 / 1.0 + 1.0 + 0.25 / e;
    CHECK(detour.qh_length() == doctest::Approx(closed).epsilon(1e-9));
    CHECK_FALSE(is_h_short(ShortArcCert{detour, 0.0, 1.0, 1.0}, 0.1));
    CHECK(is_h_short(ShortArcCert{detour, 0.0, 1.0, 1.0}, 0.5));
}

TEST_CASE("sandwich on a geodesic") {
    const auto h = Domain::half_plane();
    const auto c = vertical(h, 1, e * e);
    const auto r = verify_product_sandwich(h, c, 0.1, 1, 0.01);
    REQUIRE(r.samples.size() == 1);
    const auto& s = r.samples[0];
    CHECK(s.z.y == doctest::Approx(e).epsilon(1e-9));
    CHECK(std::fabs(s.k_xz - 1.0) <= s.slack + 1e-9);
    CHECK(std::fabs(s.product - 1.0) <= s.slack + 1e-9);
    CHECK(r.all_pass);
    // Basepoint product at z = x vanishes.
    CHECK(std::fabs(gromov_product(h, {0, 1}, {0, e * e}, {0, 1}, 0.01).value) <= 0.01);
}

TEST_CASE("sandwich on a certified arc around the puncture") {
    const auto p = Domain::punctured_plane();
    const auto c = short_arc(p, {1, 0}, {-0.5, 0.9}, 0.1);
    const auto r = verify_product_sandwich(p, c, 0.1, 10, 0.01);
    CHECK(r.samples.size() == 10);
    CHECK(r.all_pass);
    for (const auto& s : r.samples) {
        CHECK(s.lower_margin >= 0.0);
        CHECK(s.upper_margin >= 0.0);
    }
}

TEST_CASE("subarcs of a geodesic") {
    const auto h = Domain::half_plane();
    const auto c = vertical(h, 1, e * e);
    const auto same = subarc_is_short(h, c, c.arc.front(), c.arc.back(), 0.1);
    CHECK(std::ranges::equal(same.arc.points(), c.arc.points()));
    CHECK(same.k_lower == c.k_lower);
    const auto sub = subarc_is_short(h, c, {0, 1}, {0, e}, 0.1);
    CHECK(sub.arc.qh_length() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sub.h_achieved <= sub.k_upper - sub.k_lower + 1e-8);
    try {
        subarc_is_short(h, c, {0.3, 2}, {0, e}, 0.1);
        FAIL("expected PointNotOnArc");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::PointNotOnArc);
    }
}

TEST_CASE("random subarcs re-certify") {
    oracle::Sampler s(41);
    const auto d = Domain::unit_disk();
    for (int i = 0; i < 5; ++i) {
        const auto c = short_arc(d, s.in_unit_disk(), s.in_unit_disk(), 0.1);
        const double len = c.arc.qh_length();
        double a = s.uniform(0, len), b = s.uniform(0, len);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-3) continue;
        const auto sub = subarc_is_short(d, c, point_at_qh_length(d, c.arc, a), point_at_qh_length(d, c.arc, b), 0.1);
        CHECK(sub.arc.qh_length() <= sub.k_lower + 0.1 + (sub.k_upper - sub.k_lower) + 1e-9);
    }
}

TEST_CASE("length maps between vertical segments") {
    const auto h = Domain::half_plane();
    const Arc src = Arc::segment(h, {0, 1}, {0, e});
    const Arc dst = Arc::segment(h, {0, 1}, {0, e * e});

    const auto id = make_length_map(h, src, src, {0, 1}, {0, 1});
    const Point2 u = point_at_qh_length(h, src, 0.37);
    CHECK(distance(apply_length_map(h, id, u), u) <= 1e-9);

    const auto f = make_length_map(h, src, dst, {0, 1}, {0, 1});
    const Point2 img = apply_length_map(h, f, {0, std::sqrt(e)});
    CHECK(img.x == 0.0);
    CHECK(img.y == doctest::Approx(std::sqrt(e)).epsilon(1e-9));
    CHECK(distance(apply_length_map(h, f, src.front()), dst.front()) <= 1e-12);

    try {
        make_length_map(h, dst, src, {0, 1}, {0, 1});
        FAIL("expected RangeOverflow");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::RangeOverflow);
    }
    CHECK_THROWS_AS(make_length_map(h, src, dst, {0, 1}, {0, 1}, 0), Error);
    CHECK_THROWS_AS(apply_length_map(h, f, {0.5, 1.5}), Error);
}

TEST_CASE("reversed length map") {
    const auto h = Domain::half_plane();
    const Arc src = Arc::segment(h, {0, 1}, {0, e});
    const Arc dst = Arc::segment(h, {0, 1}, {0, e * e});
    // src anchor (0,1) goes to the top of dst; arclength runs backwards from there.
    const auto f = make_length_map(h, src, dst, {0, 1}, {0, e * e}, -1);
    double prev = INFINITY;
    for (int k = 0; k <= 10; ++k) {
        const double t = 0.1 * k;
        const double img = qh_position(h, dst, apply_length_map_at(h, f, t));
        CHECK(img < prev);
        CHECK(img == doctest::Approx(2.0 - t).epsilon(1e-8));
        prev = img;
    }
}

TEST_CASE("length-map identity and composition") {
    oracle::Sampler s(42);
    const auto d = Domain::punctured_plane();
    const Arc a(d, {{1, 0}, {0.5, 0.8}, {-0.3, 1.0}});
    const Arc b(d, {{1, 0.2}, {0.2, 1.4}, {-1.4, 1.3}, {-2, 0}});
    const Arc c(d, {{1.2, 0}, {1.5, 1.5}, {-1.5, 2.0}, {-3, 0.5}, {-3, -1}});
    const auto fab = make_length_map(d, a, b, a.front(), b.front());
    const auto fbc = make_length_map(d, b, c, b.front(), c.front());
    const auto fac = make_length_map(d, a, c, a.front(), c.front());
    for (int k = 0; k < 20; ++k) {
        double t0 = s.uniform(0, a.qh_length()), t1 = s.uniform(0, a.qh_length());
        if (t0 > t1) std::swap(t0, t1);
        if (t1 - t0 < 1e-6) continue;
        const Point2 u = point_at_qh_length(d, a, t0), v = point_at_qh_length(d, a, t1);
        const Point2 fu = apply_length_map(d, fab, u), fv = apply_length_map(d, fab, v);
        CHECK(std::fabs(subarc(d, b, fu, fv).qh_length() - subarc(d, a, u, v).qh_length()) <= 1e-7);
        const double direct = qh_position(d, c, apply_length_map(d, fac, u));
        const double composed = qh_position(d, c, apply_length_map(d, fbc, fu));
        CHECK(std::fabs(direct - composed) <= 2e-8);
    }
}

TEST_CASE("collinear triangle subdivision") {
    const auto h = Domain::half_plane();
    const auto beta = vertical(h, 1, e * e);        // z -> x
    const auto gamma = vertical(h, 1, 1 / (e * e));  // z -> y
    const auto alpha = vertical(h, e * e, 1 / (e * e));
    const auto t = subdivide_triangle(h, beta, gamma, alpha, 0.1);
    CHECK(std::fabs(t.xy_z) <= 1e-9);
    CHECK(t.zy_x == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(t.zx_y == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(t.alpha.prime_length == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(t.alpha.w.y == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(t.alpha.star_length <= 1e-8);
    CHECK(t.beta.prime_length <= 1e-8);
    CHECK(t.beta.doubleprime_length == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(t.stars_within());
    for (const auto* s : {&t.alpha, &t.beta, &t.gamma})
        CHECK(std::fabs(s->prime_length + s->star_length + s->doubleprime_length - s->side.qh_length()) <= 1e-8);
}

TEST_CASE("triangle in the unit disk") {
    const auto d = Domain::unit_disk();
    const double r = 0.6;
    const Point2 z{r, 0}, x{r * std::cos(2 * std::numbers::pi / 3), r * std::sin(2 * std::numbers::pi / 3)},
        y{x.x, -x.y};
    const auto t = subdivide_triangle(d, short_arc(d, z, x, 0.1), short_arc(d, z, y, 0.1), short_arc(d, x, y, 0.1), 0.1);
    CHECK(t.stars_within());
    for (const auto* s : {&t.alpha, &t.beta, &t.gamma}) {
        CHECK(s->star_length <= 0.1 + t.slack);
        CHECK(std::fabs(s->prime_length + s->star_length + s->doubleprime_length - s->side.qh_length()) <= 1e-8);
    }
}

TEST_CASE("degenerate triangles") {
    const auto h = Domain::half_plane();
    const auto b = vertical(h, 1, e);
    try {
        subdivide_triangle(h, b, vertical(h, 1, 2), vertical(h, 3, 2), 0.1);
        FAIL("expected NotATriangle");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::NotATriangle);
    }
    // z = x leaves no arc for beta at all.
    CHECK_THROWS_AS(vertical(h, 1, 1), Error);
}
