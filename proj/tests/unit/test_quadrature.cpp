#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhg/error.hpp"
#include "qhg/quadrature.hpp"

using namespace qhg;

TEST_CASE("vertical and radial segments match the antiderivative") {
    const double e = std::numbers::e;
    CHECK(segment_qh_length(Domain::half_plane(), {0, 1}, {0, e}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(segment_qh_length(Domain::punctured_plane(), {1, 0}, {e, 0}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(segment_qh_length(Domain::half_plane(), {0, std::exp(6.0)}, {0, std::exp(-6.0)}) ==
          doctest::Approx(12.0).epsilon(1e-11));
    CHECK(segment_qh_length(Domain::unit_disk(), {0, 0}, {0.99, 0}) ==
          doctest::Approx(oracle::disk_radial_k(0.0, 0.99)).epsilon(1e-10));
}

TEST_CASE("horizontal segment in the half-plane") {
    // ∫ dx / y over a horizontal segment at height y is its length over y.
    CHECK(segment_qh_length(Domain::half_plane(), {-1, 0.25}, {3, 0.25}) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(segment_qh_length_fast(Domain::half_plane(), {-0.1, 0.25}, {0.1, 0.25}) ==
          doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("oblique segment in the half-plane") {
    // y = a + s(b - a) along the segment: ∫ |d|/y ds = |d| / (b - a) * log(b / a).
    const Point2 p{0.2, 0.5}, q{1.7, 2.0};
    const double expect = distance(p, q) / 1.5 * std::log(4.0);
    CHECK(segment_qh_length(Domain::half_plane(), p, q) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(segment_qh_length_fast(Domain::half_plane(), p, q) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("quadrature is insensitive to a tighter tolerance") {
    oracle::Sampler s(21);
    const auto d = Domain::unit_disk();
    for (int i = 0; i < 100; ++i) {
        const Point2 a = s.in_unit_disk(), b = s.in_unit_disk();
        const double coarse = segment_qh_length(d, a, b);
        const double fine = segment_qh_length(d, a, b, 1e-13);
        CHECK(std::fabs(coarse - fine) <= 1e-8 * fine);
    }
}

TEST_CASE("gradient matches finite differences") {
    const auto d = Domain::punctured_plane();
    const Point2 a{1.0, 0.2}, b{0.3, 0.9};
    const auto g = segment_qh_length_grad(d, a, b);
    CHECK(g.value == doctest::Approx(segment_qh_length(d, a, b)).epsilon(1e-9));
    const double eps = 1e-6;
    auto fd = [&](Point2 pa, Point2 pb) { return segment_qh_length(d, pa, pb, 1e-13); };
    CHECK(g.grad_a.x == doctest::Approx((fd(a + Point2{eps, 0}, b) - fd(a - Point2{eps, 0}, b)) / (2 * eps)).epsilon(1e-5));
    CHECK(g.grad_a.y == doctest::Approx((fd(a + Point2{0, eps}, b) - fd(a - Point2{0, eps}, b)) / (2 * eps)).epsilon(1e-5));
    CHECK(g.grad_b.x == doctest::Approx((fd(a, b + Point2{eps, 0}) - fd(a, b - Point2{eps, 0})) / (2 * eps)).epsilon(1e-5));
    CHECK(g.grad_b.y == doctest::Approx((fd(a, b + Point2{0, eps}) - fd(a, b - Point2{0, eps})) / (2 * eps)).epsilon(1e-5));
}

TEST_CASE("j-distance bounds") {
    const auto h = Domain::half_plane();
    CHECK(j_distance(h, {0, 1}, {0, std::numbers::e}) == doctest::Approx(1.0));
    oracle::Sampler s(4);
    for (int i = 0; i < 200; ++i) {
        const Point2 a = s.in_half_plane(), b = s.in_half_plane();
        const double j = j_distance(h, a, b);
        CHECK(j <= oracle::half_plane_k(a, b) + 1e-12);
        CHECK(j + 1e-12 >= std::fabs(std::log(a.y / b.y)));
    }
}

TEST_CASE("segment touching the boundary hits the cap") {
    try {
        segment_qh_length(Domain::punctured_plane(), {1e-300, 0}, {1, 0});
        FAIL("expected QuadratureCap");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureCap);
    }
}
