#pragma once

#include "qhg/domain.hpp"

namespace qhg {

/// Default relative accuracy for quasihyperbolic segment lengths.
inline constexpr double kQuadratureRelTol = 1e-10;
/// Adaptive bisection stops at 2^20 subintervals per segment.
inline constexpr long kQuadratureMaxIntervals = 1L << 20;

/// ∫_[a,b] ds / δ_X by adaptive Simpson with interval halving.
/// Throws Error(QuadratureCap) if the subinterval cap is hit before two successive estimates agree.
double segment_qh_length(const Domain& domain, Point2 a, Point2 b, double rel_tol = kQuadratureRelTol);

/// Same integral with a fixed composite Gauss-Legendre rule. Accurate when the segment is short
/// compared with the boundary distance along it; used for graph weights and inner optimization loops.
double segment_qh_length_fast(const Domain& domain, Point2 a, Point2 b);

struct SegmentLengthGrad {
    double value = 0.0;
    Point2 grad_a;  // ∂value/∂a
    Point2 grad_b;  // ∂value/∂b
};

/// Quasihyperbolic length of [a, b] together with its gradient with respect to both endpoints.
SegmentLengthGrad segment_qh_length_grad(const Domain& domain, Point2 a, Point2 b);

/// Gehring-Osgood j-distance log(1 + |x-y| / min(δ(x), δ(y))), a lower bound for k_X.
double j_distance(const Domain& domain, Point2 x, Point2 y);

}  // namespace qhg
