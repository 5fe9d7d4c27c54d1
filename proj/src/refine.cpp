#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qhg/error.hpp"
#include "qhg/qh_engine.hpp"
#include "qhg/quadrature.hpp"

namespace qhg {

namespace {

std::vector<double> cumulative_fast(const Domain& domain, const std::vector<Point2>& pts) {
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + segment_qh_length_fast(domain, pts[i - 1], pts[i]);
    return cum;
}

bool admissible(const Domain& domain, Point2 a, Point2 p, Point2 b) {
    return domain.contains(p) && domain.segment_in_domain(a, p) && domain.segment_in_domain(p, b);
}

// Bisect every segment (Euclidean midpoints) until its quasihyperbolic length is at most sigma.
std::vector<Point2> subdivide(const Domain& domain, const std::vector<Point2>& pts, double sigma) {
    std::vector<Point2> out{pts.front()};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Point2 a = pts[i - 1];
        const Point2 b = pts[i];
        std::vector<Point2> local;
        auto rec = [&](auto&& self, Point2 p, Point2 q, int depth) -> void {
            if (depth < 40 && segment_qh_length_fast(domain, p, q) > sigma) {
                const Point2 m = lerp(p, q, 0.5);
                self(self, p, m, depth + 1);
                self(self, m, q, depth + 1);
                return;
            }
            local.push_back(q);
        };
        rec(rec, a, b, 0);
        out.insert(out.end(), local.begin(), local.end());
    }
    return out;
}

// One coordinate-descent sweep; returns the total decrease.
double sweep(const Domain& domain, std::vector<Point2>& pts, std::vector<double>& step) {
    double gained = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const Point2 a = pts[i - 1];
        const Point2 p = pts[i];
        const Point2 b = pts[i + 1];
        const auto left = segment_qh_length_grad(domain, a, p);
        const auto right = segment_qh_length_grad(domain, p, b);
        const double f0 = left.value + right.value;
        const Point2 g = left.grad_b + right.grad_a;
        const double gn = norm(g);
        const double dp = domain.raw_boundary_distance(p);
        if (!(gn > 1e-14)) continue;
        const Point2 dir = (-1.0 / gn) * g;
        const double cap = 0.25 * dp;
        auto eval = [&](double s) -> double {
            const Point2 q = p + s * dir;
            if (!admissible(domain, a, q, b)) return std::numeric_limits<double>::infinity();
            return segment_qh_length_fast(domain, a, q) + segment_qh_length_fast(domain, q, b);
        };
        double s = std::min(step[i] > 0.0 ? step[i] : 0.05 * dp, cap);
        double best_s = 0.0;
        double best_f = f0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            const double f1 = eval(s);
            if (f1 < best_f) {
                best_f = f1;
                best_s = s;
            }
            // Parabola through f(0), f'(0) = -gn and f(s).
            const double curv = f1 - f0 + gn * s;
            if (std::isfinite(f1) && curv > 0.0) {
                const double s_star = std::min(gn * s * s / (2.0 * curv), cap);
                if (s_star > 0.0 && std::fabs(s_star - s) > 1e-3 * s) {
                    const double f2 = eval(s_star);
                    if (f2 < best_f) {
                        best_f = f2;
                        best_s = s_star;
                    }
                }
            }
            if (best_s > 0.0) break;
            s *= 0.25;
            if (s < 1e-14 * dp) break;
        }
        if (best_s > 0.0) {
            pts[i] = p + best_s * dir;
            gained += f0 - best_f;
            step[i] = std::min(2.0 * best_s, cap);
        } else {
            step[i] = 0.25 * s;
        }
    }
    return gained;
}

}  // namespace

Arc shortcut_path(const Domain& domain, const Arc& arc, std::size_t window) {
    std::vector<Point2> pts(arc.points().begin(), arc.points().end());
    window = std::max<std::size_t>(window, 2);
    for (int pass = 0; pass < 8; ++pass) {
        const auto cum = cumulative_fast(domain, pts);
        std::vector<Point2> out{pts.front()};
        std::size_t i = 0;
        bool changed = false;
        while (i + 1 < pts.size()) {
            std::size_t next = i + 1;
            const std::size_t far = std::min(pts.size() - 1, i + window);
            for (std::size_t j = far; j > i + 1; --j) {
                const double along = cum[j] - cum[i];
                if (j_distance(domain, pts[i], pts[j]) >= along) continue;
                if (!domain.segment_in_domain(pts[i], pts[j])) continue;
                if (segment_qh_length_fast(domain, pts[i], pts[j]) < along * (1.0 - 1e-12)) {
                    next = j;
                    changed = true;
                    break;
                }
            }
            out.push_back(pts[next]);
            i = next;
        }
        pts = std::move(out);
        if (!changed) break;
    }
    return Arc(domain, std::move(pts));
}

Arc refine_path(const Domain& domain, const Arc& arc, const RefineOptions& options) {
    if (!(options.target_segment > 0.0)) throw Error(ErrorKind::InvalidArgument, "target segment must be positive");
    const Arc cut = shortcut_path(domain, arc, options.shortcut_window);
    std::vector<Point2> pts(cut.points().begin(), cut.points().end());

    double sigma = std::max(options.target_segment, 0.4);
    for (;;) {
        pts = subdivide(domain, pts, sigma);
        std::vector<double> step(pts.size(), 0.0);
        double total = cumulative_fast(domain, pts).back();
        for (int s = 0; s < options.max_sweeps; ++s) {
            const double gained = sweep(domain, pts, step);
            if (gained <= std::max(options.min_sweep_gain, 1e-13 * total)) break;
            total -= gained;
        }
        if (sigma <= options.target_segment) break;
        sigma = std::max(0.5 * sigma, options.target_segment);
    }

    Arc refined(domain, std::move(pts));
    if (refined.qh_length() <= cut.qh_length()) return refined;
    return cut.qh_length() <= arc.qh_length() ? cut : arc;
}

}  // namespace qhg
