#include "qhg/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "qhg/error.hpp"

namespace qhg {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

struct Simpson {
    const Domain& domain;
    Point2 a;
    Point2 dir;  // b - a
    double len;
    mutable long intervals = 1;

    double f(double s) const { return 1.0 / domain.raw_boundary_distance(a + s * dir); }

    double recurse(double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
                   int depth) const {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid);
        const double rm = 0.5 * (mid + hi);
        const double flm = f(lm);
        const double frm = f(rm);
        const double h = (hi - lo) * len;
        const double left = h / 12.0 * (flo + 4.0 * flm + fmid);
        const double right = h / 12.0 * (fmid + 4.0 * frm + fhi);
        const double diff = left + right - whole;
        if (depth >= 3 && std::fabs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
        if (++intervals > kQuadratureMaxIntervals || depth >= 200)
            throw Error(ErrorKind::QuadratureCap, "adaptive Simpson did not converge within 2^20 subintervals");
        return recurse(lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1) +
               recurse(mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1);
    }
};

int panel_count(const Domain& domain, Point2 a, Point2 b) {
    const double len = distance(a, b);
    const double dmin = std::min(domain.raw_boundary_distance(a), domain.raw_boundary_distance(b));
    if (!(dmin > 0.0)) return 64;
    return std::clamp(static_cast<int>(std::ceil(len / (0.5 * dmin))), 1, 64);
}

double gauss_legendre(const Domain& domain, Point2 a, Point2 b) {
    const double len = distance(a, b);
    const int m = panel_count(domain, a, b);
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            const double s = (k + 0.5 * (kGlNodes[i] + 1.0)) / m;
            sum += kGlWeights[i] / domain.raw_boundary_distance(lerp(a, b, s));
        }
    }
    return 0.5 * len * sum / m;
}

}  // namespace

double segment_qh_length(const Domain& domain, Point2 a, Point2 b, double rel_tol) {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    const Simpson s{domain, a, b - a, len};
    // Graded split first: every piece is at most twice as long as the boundary distance at its
    // ends, so δ varies by a bounded factor on it and the Simpson error estimate is reliable.
    double total = 0.0;
    std::vector<std::array<double, 4>> stack{{0.0, 1.0, s.f(0.0), s.f(1.0)}};
    while (!stack.empty()) {
        const auto [lo, hi, flo, fhi] = stack.back();
        stack.pop_back();
        const double piece = (hi - lo) * len;
        if (piece * std::max(flo, fhi) > 2.0) {
            if (++s.intervals > kQuadratureMaxIntervals)
                throw Error(ErrorKind::QuadratureCap, "adaptive Simpson did not converge within 2^20 subintervals");
            const double mid = 0.5 * (lo + hi);
            const double fmid = s.f(mid);
            stack.push_back({mid, hi, fmid, fhi});
            stack.push_back({lo, mid, flo, fmid});
            continue;
        }
        const double fm = s.f(0.5 * (lo + hi));
        const double whole = piece / 6.0 * (flo + 4.0 * fm + fhi);
        total += s.recurse(lo, hi, flo, fm, fhi, whole, rel_tol * whole, 0);
    }
    return total;
}

double segment_qh_length_fast(const Domain& domain, Point2 a, Point2 b) {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    const double dmin = std::min(domain.raw_boundary_distance(a), domain.raw_boundary_distance(b));
    // Long segments relative to the boundary distance go through the adaptive rule.
    if (len > 8.0 * dmin) return segment_qh_length(domain, a, b, 1e-8);
    return gauss_legendre(domain, a, b);
}

SegmentLengthGrad segment_qh_length_grad(const Domain& domain, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len = norm(d);
    if (len == 0.0) return {};
    const int m = panel_count(domain, a, b);
    // value = len * ∫0^1 1/δ(a + s d) ds
    // ∂/∂b = d/len * I0 - len * ∫ s ∇δ/δ² ds ; ∂/∂a = -d/len * I0 - len * ∫ (1-s) ∇δ/δ² ds
    double i0 = 0.0;
    Point2 is{0.0, 0.0};
    Point2 i1ms{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            const double s = (k + 0.5 * (kGlNodes[i] + 1.0)) / m;
            const double w = 0.5 * kGlWeights[i] / m;
            const Point2 x = lerp(a, b, s);
            const double delta = domain.raw_boundary_distance(x);
            const Point2 g = domain.boundary_distance_gradient(x);
            i0 += w / delta;
            const double c = w / (delta * delta);
            is = is + (c * s) * g;
            i1ms = i1ms + (c * (1.0 - s)) * g;
        }
    }
    const Point2 u = (1.0 / len) * d;
    return {len * i0, (-i0) * u - len * i1ms, i0 * u - len * is};
}

double j_distance(const Domain& domain, Point2 x, Point2 y) {
    const double dmin = std::min(domain.boundary_distance(x), domain.boundary_distance(y));
    return std::log1p(distance(x, y) / dmin);
}

}  // namespace qhg
