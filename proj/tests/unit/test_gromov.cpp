#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhg/error.hpp"
#include "qhg/gromov.hpp"

using namespace qhg;

namespace {

const double e = std::numbers::e;

// Distance matrix built from the closed form, no engine involved.
DistanceMatrix half_plane_matrix(const std::vector<Point2>& pts) {
    const std::size_t n = pts.size();
    std::vector<double> v(n * n, 0.0), err(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) v[i * n + j] = oracle::half_plane_k(pts[i], pts[j]);
    return DistanceMatrix(pts, v, err);
}

// Maximal deficiency by brute force over all ordered quadruples.
double brute_delta(const DistanceMatrix& m) {
    const std::size_t n = m.size();
    double best = 0.0;
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    best = std::max(best, std::min(m.product(x, z, w), m.product(z, y, w)) - m.product(x, y, w));
    return best;
}

}  // namespace

TEST_CASE("products on a vertical ray") {
    const auto h = Domain::half_plane();
    const double tol = 0.01;
    CHECK(std::fabs(gromov_product(h, {0, e}, {0, e}, {0, 1}, tol).value - 1.0) <= tol);
    CHECK(std::fabs(gromov_product(h, {0, 1}, {0, e}, {0, 1}, tol).value) <= tol);
    const auto r = gromov_product(h, {0, 4}, {0, 0.25}, {0, 1}, tol);
    CHECK(std::fabs(r.value) <= tol);
    CHECK(r.distance_slack == tol);
}

TEST_CASE("product bounds") {
    oracle::Sampler s(31);
    for (const auto& d : {Domain::half_plane(), Domain::punctured_plane()}) {
        for (int i = 0; i < 6; ++i) {
            const Point2 x = s.in(d), y = s.in(d), w = s.in(d);
            const double tol = 0.03;
            const auto r = gromov_product(d, x, y, w, tol);
            const double xw = qh_distance(d, x, w, tol / 3).upper, yw = qh_distance(d, y, w, tol / 3).upper;
            CHECK(r.value >= -r.distance_slack);
            CHECK(r.value <= std::min(xw, yw) + r.distance_slack);
        }
    }
}

TEST_CASE("collinear four points have zero delta") {
    const DistanceMatrix m = half_plane_matrix({{0, 1}, {0, e}, {0, e * e}, {0, e * e * e}});
    const auto d = four_point_delta(m);
    CHECK(d.delta_hat <= 1e-12);
    CHECK(d.exhaustive);
    CHECK(d.quadruples_checked == 256);
    CHECK(brute_delta(m) <= 1e-12);
}

TEST_CASE("three points have zero delta") {
    oracle::Sampler s(32);
    for (int i = 0; i < 20; ++i) {
        const DistanceMatrix m = half_plane_matrix({s.in_half_plane(), s.in_half_plane(), s.in_half_plane()});
        CHECK(four_point_delta(m).delta_hat <= 1e-12);
        CHECK(brute_delta(m) <= 1e-12);
    }
}

TEST_CASE("twenty random points") {
    oracle::Sampler s(33);
    std::vector<Point2> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({s.uniform(-20, 20), std::exp(s.uniform(-4, 4))});
    const DistanceMatrix m = half_plane_matrix(pts);
    const auto d = four_point_delta(m);
    CHECK(d.delta_hat == doctest::Approx(brute_delta(m)).epsilon(1e-12));
    // Hyperbolic plane: the four-point constant is log 2 for the product form.
    CHECK(d.delta_hat <= std::log(2.0) + 1e-9);
    if (d.delta_hat > 0.0) {
        REQUIRE(d.witness);
        const auto [x, y, z, w] = *d.witness;
        CHECK(std::min(m.product(x, z, w), m.product(z, y, w)) - m.product(x, y, w) ==
              doctest::Approx(d.delta_hat).epsilon(1e-12));
    }
}

TEST_CASE("delta is monotone under adding points") {
    oracle::Sampler s(34);
    std::vector<Point2> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({s.uniform(-5, 5), std::exp(s.uniform(-3, 3))});
    const DistanceMatrix m = half_plane_matrix(pts);
    double prev = 0.0;
    for (std::size_t n = 4; n <= 20; ++n) {
        const double d = four_point_delta(m.prefix(n)).delta_hat;
        CHECK(d >= prev);
        prev = d;
    }
}

TEST_CASE("sampled scan above the exhaustive limit") {
    oracle::Sampler s(35);
    std::vector<Point2> pts;
    for (int i = 0; i < 70; ++i) pts.push_back({s.uniform(-5, 5), std::exp(s.uniform(-3, 3))});
    const DistanceMatrix m = half_plane_matrix(pts);
    DeltaOptions opts;
    opts.seed = 9;
    opts.sample_budget = 20000;
    const auto a = four_point_delta(m, opts);
    const auto b = four_point_delta(m, opts);
    CHECK_FALSE(a.exhaustive);
    CHECK(a.quadruples_checked == 20000);
    CHECK(a.delta_hat == b.delta_hat);
    CHECK(a.delta_hat <= std::log(2.0) + 1e-9);
}

TEST_CASE("inconsistent matrices are rejected") {
    const std::vector<Point2> pts{{0, 1}, {0, 2}, {0, 3}};
    auto kind_of = [&](std::vector<double> v) {
        try {
            four_point_delta(DistanceMatrix(pts, std::move(v), std::vector<double>(9, 0.0)));
        } catch (const Error& err) {
            return err.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    CHECK(kind_of({0, 1, 1, 1, 0, 1, 1, 1, 0}) == ErrorKind::InvalidArgument);  // consistent: no throw
    CHECK(kind_of({0, 1, 5, 1, 0, 1, 5, 1, 0}) == ErrorKind::MatrixInconsistent);
    CHECK(kind_of({0, 1, 1, 2, 0, 1, 1, 1, 0}) == ErrorKind::MatrixInconsistent);
    CHECK(kind_of({1, 1, 1, 1, 0, 1, 1, 1, 0}) == ErrorKind::MatrixInconsistent);
    CHECK(kind_of({0, -1, 1, -1, 0, 1, 1, 1, 0}) == ErrorKind::MatrixInconsistent);
}

TEST_CASE("sequence along a vertical ray") {
    const auto h = Domain::half_plane();
    std::vector<Point2> u;
    for (int i = 1; i <= 8; ++i) u.push_back({0, std::exp(i)});
    const auto prefix = make_sequence_prefix(h, u, {0, 1}, 0.01);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(std::fabs(prefix.pair_products[i][j] - static_cast<double>(std::min(i, j) + 1)) <=
                  prefix.product_slack);
            CHECK(prefix.pair_products[i][j] == prefix.pair_products[j][i]);
        }
    const auto diag = sequence_diagnostics(prefix, 3);
    for (std::size_t m = 1; m < diag.growth.size(); ++m) CHECK(diag.growth[m] > diag.growth[m - 1]);
    CHECK(std::fabs(diag.tail_min - 6.0) <= diag.slack);
    CHECK(diag.gromov_like(5.5));
    CHECK_FALSE(diag.gromov_like(6.5));
    CHECK_THROWS_AS(sequence_diagnostics(prefix, 9), Error);
}

TEST_CASE("constant sequence is stuck") {
    const auto prefix = make_sequence_prefix(Domain::half_plane(), std::vector<Point2>(6, Point2{0, e}), {0, 1}, 0.01);
    const auto diag = sequence_diagnostics(prefix, 4);
    CHECK(std::fabs(diag.tail_min - 1.0) <= diag.slack);
    CHECK_FALSE(diag.gromov_like(1.5));
}

TEST_CASE("subsequences keep their scale") {
    const auto h = Domain::half_plane();
    std::vector<Point2> u;
    for (int i = 1; i <= 8; ++i) u.push_back({0.3 * i, std::exp(i)});
    const auto full = sequence_diagnostics(make_sequence_prefix(h, u, {0, 1}, 0.01), 4);
    std::vector<Point2> sub{u[0], u[2], u[4], u[5], u[6], u[7]};
    const auto part = sequence_diagnostics(make_sequence_prefix(h, sub, {0, 1}, 0.01), 4);
    CHECK(part.tail_min >= full.tail_min - part.slack - full.slack);
}

TEST_CASE("opposite rays are not equivalent") {
    std::vector<Point2> a, b;
    for (int i = 1; i <= 6; ++i) {
        a.push_back({0, std::exp(i)});
        b.push_back({0, std::exp(-i)});
    }
    const auto eq = equivalence_diagnostics(Domain::half_plane(), a, b, {0, 1}, 0.01);
    REQUIRE(eq.cross_products.size() == 6);
    for (const double c : eq.cross_products) CHECK(std::fabs(c) <= eq.slack);
    CHECK_FALSE(eq.equivalent_at(0.5));

    const auto same = equivalence_diagnostics(Domain::half_plane(), a, a, {0, 1}, 0.01);
    CHECK(same.equivalent_at(3.0));
}

TEST_CASE("basepoint shift") {
    oracle::Sampler s(36);
    const auto h = Domain::half_plane();
    for (int i = 0; i < 20; ++i) {
        const Point2 x = s.in_half_plane(), y = s.in_half_plane(), w = s.in_half_plane(), v = s.in_half_plane();
        const DistanceMatrix m = half_plane_matrix({x, y, w, v});
        CHECK(std::fabs(m.product(0, 1, 2) - m.product(0, 1, 3)) <= m(2, 3) + 1e-12);
    }
}
