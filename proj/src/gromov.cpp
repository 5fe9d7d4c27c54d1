#include "qhg/gromov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qhg/error.hpp"

namespace qhg {

namespace {

struct Bracket {
    double mid = 0.0;
    double half = 0.0;
};

Bracket estimate(const Domain& domain, Point2 a, Point2 b, double tol, const EngineOptions& options) {
    if (a == b) {
        domain.boundary_distance(a);
        return {};
    }
    const auto e = qh_distance(domain, a, b, tol, options);
    return {e.mid(), e.half_width()};
}

}  // namespace

ProductRecord gromov_product(const Domain& domain, Point2 x, Point2 y, Point2 w, double tol,
                             const EngineOptions& options) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    const double t = tol / 3.0;
    const auto xw = estimate(domain, x, w, t, options);
    const auto yw = estimate(domain, y, w, t, options);
    const auto xy = estimate(domain, x, y, t, options);
    return {x, y, w, 0.5 * (xw.mid + yw.mid - xy.mid), tol};
}

DistanceMatrix::DistanceMatrix(std::vector<Point2> points, std::vector<double> values, std::vector<double> errors)
    : points_(std::move(points)), values_(std::move(values)), errors_(std::move(errors)) {
    const std::size_t n = points_.size();
    if (values_.size() != n * n || errors_.size() != n * n)
        throw Error(ErrorKind::InvalidArgument, "distance matrix must be n x n over its points");
}

double DistanceMatrix::max_error() const {
    double m = 0.0;
    for (const double e : errors_) m = std::max(m, e);
    return m;
}

DistanceMatrix DistanceMatrix::prefix(std::size_t n) const {
    n = std::min(n, size());
    std::vector<double> v(n * n), e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            v[i * n + j] = (*this)(i, j);
            e[i * n + j] = error(i, j);
        }
    return {std::vector<Point2>(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(n)), std::move(v),
            std::move(e)};
}

void DistanceMatrix::validate() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((*this)(i, i) != 0.0) throw Error(ErrorKind::MatrixInconsistent, "nonzero diagonal at " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            const double d = (*this)(i, j);
            if (!std::isfinite(d) || d < 0.0)
                throw Error(ErrorKind::MatrixInconsistent, "invalid entry at " + std::to_string(i) + "," + std::to_string(j));
            if (std::fabs(d - (*this)(j, i)) > 1e-12 * std::max(1.0, d))
                throw Error(ErrorKind::MatrixInconsistent, "asymmetric at " + std::to_string(i) + "," + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double slack = 2.0 * (error(i, k) + error(i, j) + error(j, k)) + 1e-9;
                if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + slack)
                    throw Error(ErrorKind::MatrixInconsistent,
                                "triangle inequality fails for " + std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(k));
            }
}

DistanceMatrix distance_matrix(const Domain& domain, std::vector<Point2> points, double tol,
                               const EngineOptions& options) {
    const std::size_t n = points.size();
    std::vector<double> v(n * n, 0.0), e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        domain.boundary_distance(points[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto b = estimate(domain, points[i], points[j], tol, options);
            v[i * n + j] = v[j * n + i] = b.mid;
            e[i * n + j] = e[j * n + i] = b.half;
        }
    }
    return {std::move(points), std::move(v), std::move(e)};
}

DeltaEstimate four_point_delta(const DistanceMatrix& matrix, const DeltaOptions& options) {
    matrix.validate();
    const std::size_t n = matrix.size();
    DeltaEstimate out;
    out.points.assign(matrix.points().begin(), matrix.points().end());
    out.slack = 6.0 * matrix.max_error();
    if (n == 0) return out;

    std::vector<std::size_t> bases = options.basepoints;
    if (bases.empty())
        for (std::size_t i = 0; i < n; ++i) bases.push_back(i);
    for (const auto b : bases)
        if (b >= n) throw Error(ErrorKind::InvalidArgument, "basepoint index out of range");

    double best = 0.0;
    auto consider = [&](double deficiency, std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
        if (deficiency > best) {
            best = deficiency;
            out.witness = std::array<std::size_t, 4>{x, y, z, w};
        }
    };

    if (n <= kExhaustiveDeltaLimit) {
        std::vector<double> p(n * n);
        for (const auto w : bases) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) p[i * n + j] = matrix.product(i, j, w);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    const double pxy = p[x * n + y];
                    for (std::size_t z = 0; z < n; ++z)
                        consider(std::min(p[x * n + z], p[z * n + y]) - pxy, x, y, z, w);
                }
            out.quadruples_checked += static_cast<std::uint64_t>(n) * n * n;
        }
    } else {
        out.exhaustive = false;
        std::mt19937_64 rng(options.seed);
        for (std::uint64_t s = 0; s < options.sample_budget; ++s) {
            const std::size_t w = bases[rng() % bases.size()];
            const std::size_t x = rng() % n;
            const std::size_t y = rng() % n;
            const std::size_t z = rng() % n;
            consider(std::min(matrix.product(x, z, w), matrix.product(z, y, w)) - matrix.product(x, y, w), x, y, z, w);
        }
        out.quadruples_checked = options.sample_budget;
    }
    out.delta_hat = best;
    return out;
}

SequencePrefix make_sequence_prefix(const Domain& domain, std::vector<Point2> points, Point2 basepoint, double tol,
                                    const EngineOptions& options) {
    std::vector<Point2> all = points;
    all.push_back(basepoint);
    const auto m = distance_matrix(domain, std::move(all), tol, options);
    const std::size_t n = points.size();
    SequencePrefix out{std::move(points), basepoint, {}, 0.0};
    out.pair_products.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out.pair_products[i][j] = m.product(i, j, n);
            out.product_slack = std::max(out.product_slack, m.product_error(i, j, n));
        }
    return out;
}

SequenceDiagnostics sequence_diagnostics(const SequencePrefix& prefix, std::size_t tail) {
    const std::size_t n = prefix.points.size();
    if (tail < 2 || tail > n)
        throw Error(ErrorKind::InvalidArgument, "tail must satisfy 2 <= tail <= prefix length");
    SequenceDiagnostics out;
    out.tail = tail;
    out.slack = prefix.product_slack;
    out.growth.assign(n - 1, std::numeric_limits<double>::infinity());
    // Suffix minima over pairs i < j with i >= m.
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t m = n - 1; m-- > 0;) {
        for (std::size_t j = m + 1; j < n; ++j) running = std::min(running, prefix.pair_products[m][j]);
        out.growth[m] = running;
    }
    out.tail_min = out.growth[n - tail];
    return out;
}

EquivalenceDiagnostics equivalence_diagnostics(const Domain& domain, std::span<const Point2> a,
                                               std::span<const Point2> b, Point2 basepoint, double tol,
                                               const EngineOptions& options) {
    const std::size_t n = std::min(a.size(), b.size());
    EquivalenceDiagnostics out;
    out.slack = tol;
    for (std::size_t i = 0; i < n; ++i)
        out.cross_products.push_back(gromov_product(domain, a[i], b[i], basepoint, tol, options).value);
    out.growth.resize(n);
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t m = n; m-- > 0;) {
        running = std::min(running, out.cross_products[m]);
        out.growth[m] = running;
    }
    return out;
}

}  // namespace qhg
