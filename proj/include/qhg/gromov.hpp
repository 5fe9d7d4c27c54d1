#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhg/domain.hpp"
#include "qhg/qh_engine.hpp"

namespace qhg {

/// (x|y)_w = ½(k(x,w) + k(y,w) - k(x,y)) from distance estimates.
struct ProductRecord {
    Point2 x, y, w;
    double value = 0.0;
    /// Sum of the three distance tolerances.
    double distance_slack = 0.0;
};

/// Each distance is estimated at tol/3 and enters through the midpoint of its bracket.
ProductRecord gromov_product(const Domain& domain, Point2 x, Point2 y, Point2 w, double tol,
                             const EngineOptions& options = {});

/// Symmetric table of distance estimates over a point set. `error(i, j)` bounds the distance
/// between the stored midpoint and k_X (half the bracket width).
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    /// Raw constructor (row-major n x n). Validation happens in four_point_delta.
    DistanceMatrix(std::vector<Point2> points, std::vector<double> values, std::vector<double> errors);

    std::size_t size() const { return points_.size(); }
    std::span<const Point2> points() const { return points_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
    double error(std::size_t i, std::size_t j) const { return errors_[i * size() + j]; }
    double max_error() const;
    /// (i|j)_w and its error bound.
    double product(std::size_t i, std::size_t j, std::size_t w) const {
        return 0.5 * ((*this)(i, w) + (*this)(j, w) - (*this)(i, j));
    }
    double product_error(std::size_t i, std::size_t j, std::size_t w) const {
        return 0.5 * (error(i, w) + error(j, w) + error(i, j));
    }
    /// The matrix restricted to the first n points.
    DistanceMatrix prefix(std::size_t n) const;
    /// Throws MatrixInconsistent unless symmetric with zero diagonal and triangle inequalities
    /// holding within the recorded errors.
    void validate() const;

private:
    std::vector<Point2> points_;
    std::vector<double> values_;
    std::vector<double> errors_;
};

/// Runs the engine on every unordered pair (n(n-1)/2 calls).
DistanceMatrix distance_matrix(const Domain& domain, std::vector<Point2> points, double tol,
                               const EngineOptions& options = {});

/// Point sets up to this size are scanned exhaustively.
inline constexpr std::size_t kExhaustiveDeltaLimit = 60;

struct DeltaEstimate {
    std::vector<Point2> points;
    double delta_hat = 0.0;
    /// Indices (x, y, z, w) of the quadruple attaining delta_hat; empty when delta_hat is 0.
    std::optional<std::array<std::size_t, 4>> witness;
    std::uint64_t quadruples_checked = 0;
    bool exhaustive = true;
    /// Bound on the error of delta_hat coming from the distance errors.
    double slack = 0.0;
};

struct DeltaOptions {
    /// Basepoint indices; all points when empty.
    std::vector<std::size_t> basepoints;
    std::uint64_t seed = 0;
    /// Number of random ordered quadruples when the set exceeds kExhaustiveDeltaLimit.
    std::uint64_t sample_budget = 1'000'000;
};

/// max over ordered quadruples of min{(x|z)_w, (z|y)_w} - (x|y)_w, clamped at 0.
DeltaEstimate four_point_delta(const DistanceMatrix& matrix, const DeltaOptions& options = {});

/// A finite piece of a sequence with its pair products based at `basepoint`.
struct SequencePrefix {
    std::vector<Point2> points;
    Point2 basepoint;
    /// (x_i|x_j)_ω, symmetric; the diagonal holds k(x_i, ω).
    std::vector<std::vector<double>> pair_products;
    double product_slack = 0.0;
};

SequencePrefix make_sequence_prefix(const Domain& domain, std::vector<Point2> points, Point2 basepoint, double tol,
                                    const EngineOptions& options = {});

struct SequenceDiagnostics {
    /// growth[m] = min over m <= i < j of (x_i|x_j)_ω (0-based m, size n - 1).
    std::vector<double> growth;
    /// min over the last `tail` indices.
    double tail_min = 0.0;
    std::size_t tail = 0;
    double slack = 0.0;

    /// The finite-scale stand-in for (x_i|x_j)_ω -> ∞.
    bool gromov_like(double scale) const { return tail_min >= scale; }
};

/// Throws InvalidArgument unless 2 <= tail <= prefix length.
SequenceDiagnostics sequence_diagnostics(const SequencePrefix& prefix, std::size_t tail);

struct EquivalenceDiagnostics {
    /// (x_i|y_i)_ω per index.
    std::vector<double> cross_products;
    /// growth[m] = min over i >= m of the cross products.
    std::vector<double> growth;
    double slack = 0.0;

    /// Minimum cross product over the second half of the prefix reaches `scale`.
    bool equivalent_at(double scale) const { return !growth.empty() && growth[growth.size() / 2] >= scale; }
};

/// Compares two prefixes index by index (the shorter length is used).
EquivalenceDiagnostics equivalence_diagnostics(const Domain& domain, std::span<const Point2> a,
                                               std::span<const Point2> b, Point2 basepoint, double tol,
                                               const EngineOptions& options = {});

}  // namespace qhg
