#include "qhg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "qhg/error.hpp"

namespace qhg {

namespace {

double estimate_mid(const Domain& domain, Point2 a, Point2 b, double tol, const EngineOptions& options) {
    if (a == b) return 0.0;
    return qh_distance(domain, a, b, tol, options).mid();
}

void dedupe(const Domain& domain, std::vector<Point2>& pts) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const Point2 p : pts) {
        const double tol = kSnapTol * domain.raw_boundary_distance(p);
        const bool seen = std::any_of(out.begin(), out.end(), [&](Point2 q) { return distance(p, q) <= tol; });
        if (!seen) out.push_back(p);
    }
    pts = std::move(out);
}

std::vector<Point2> arc_samples(const Domain& domain, const Arc& arc, double pitch) {
    const double len = arc.qh_length();
    const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(len / pitch)));
    std::vector<Point2> pts;
    for (std::size_t k = 0; k <= count; ++k)
        pts.push_back(point_at_qh_length(domain, arc, len * static_cast<double>(k) / static_cast<double>(count)));
    return pts;
}

void require_positive_h(double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
}

}  // namespace

MapFamily make_map_family(const Domain& domain, std::vector<Arc> arcs, std::vector<double> anchors) {
    if (arcs.size() != anchors.size()) throw Error(ErrorKind::InvalidArgument, "one anchor per arc is required");
    MapFamily f{std::move(arcs), std::move(anchors), {}};
    const std::size_t n = f.size();
    f.maps.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Point2 a = point_at_qh_length(domain, f.arcs[i], f.anchors[i]);
            const Point2 b = point_at_qh_length(domain, f.arcs[j], f.anchors[j]);
            f.maps[i * n + j] = make_length_map(domain, f.arcs[i], f.arcs[j], a, b, 1);
        }
    return f;
}

std::vector<DisplacementEntry> displacement_report(const Domain& domain, const MapFamily& family, double bound,
                                                   double slack, const HarnessOptions& options) {
    std::vector<DisplacementEntry> rows;
    const std::size_t n = family.size();
    const std::size_t base = std::max<std::size_t>(options.displacement_samples, 2) - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const LengthMap& map = family.at(i, j);
            const double len = family.arcs[i].qh_length();
            DisplacementEntry row{i, j, 0.0, family.arcs[i].front(), 0, bound, slack, 0.0, true};
            auto eval = [&](std::size_t k, std::size_t intervals) {
                const double t = len * static_cast<double>(k) / static_cast<double>(intervals);
                const Point2 u = point_at_qh_length(domain, family.arcs[i], t);
                const Point2 fu = apply_length_map_at(domain, map, t);
                const double d = estimate_mid(domain, u, fu, options.tol, options.engine);
                ++row.samples;
                if (d > row.sup) {
                    row.sup = d;
                    row.witness = u;
                }
            };
            std::size_t intervals = base;
            for (std::size_t k = 0; k <= intervals; ++k) eval(k, intervals);
            while (2 * intervals + 1 <= options.max_displacement_samples) {
                const double previous = row.sup;
                intervals *= 2;
                for (std::size_t k = 1; k < intervals; k += 2) eval(k, intervals);
                if (row.sup - previous < options.sup_change) break;
            }
            row.margin = bound + slack - row.sup;
            row.pass = row.margin >= 0.0;
            rows.push_back(row);
        }
    return rows;
}

CompositionReport composition_check(const Domain& domain, const MapFamily& family, std::size_t samples) {
    CompositionReport r;
    const std::size_t n = family.size();
    const std::size_t s = std::max<std::size_t>(samples, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double len = family.arcs[i].qh_length();
        for (std::size_t k = 0; k < s; ++k) {
            const double t = len * static_cast<double>(k) / static_cast<double>(s - 1);
            const Point2 u = point_at_qh_length(domain, family.arcs[i], t);
            const Point2 fii = apply_length_map(domain, family.at(i, i), u);
            r.max_error = std::max(r.max_error, std::fabs(qh_position(domain, family.arcs[i], fii) - t));
            ++r.samples;
            for (std::size_t j = i; j < n; ++j) {
                const Point2 fij = apply_length_map(domain, family.at(i, j), u);
                for (std::size_t m = j; m < n; ++m) {
                    const Point2 direct = apply_length_map(domain, family.at(i, m), u);
                    const Point2 composed = apply_length_map(domain, family.at(j, m), fij);
                    const double e = std::fabs(qh_position(domain, family.arcs[m], direct) -
                                               qh_position(domain, family.arcs[m], composed));
                    r.max_error = std::max(r.max_error, e);
                    ++r.samples;
                }
            }
        }
        for (std::size_t j = i; j < n; ++j) r.triples += n - j;
    }
    r.pass = r.max_error <= r.tolerance;
    return r;
}

DeltaSummary run_delta(const Domain& domain, std::vector<Point2> anchors, const std::vector<const Arc*>& arcs, double h,
                       const HarnessOptions& options) {
    DeltaSummary out;
    out.tol = options.tol;
    double pitch = h;
    std::vector<Point2> pts;
    for (;;) {
        pts = anchors;
        for (const Arc* a : arcs) {
            const auto s = arc_samples(domain, *a, pitch);
            pts.insert(pts.end(), s.begin(), s.end());
        }
        dedupe(domain, pts);
        if (pts.size() <= options.delta_max_points) break;
        pitch *= 1.25;
    }
    out.pitch = pitch;
    const auto matrix = distance_matrix(domain, std::move(pts), options.tol, options.engine);
    DeltaOptions d;
    d.seed = options.seed;
    d.sample_budget = options.delta_sample_budget;
    out.estimate = four_point_delta(matrix, d);
    return out;
}

bool Lemma31Run::pass() const {
    return composition.pass && std::all_of(displacements.begin(), displacements.end(), [](const auto& r) { return r.pass; });
}

Lemma31Run lemma31_construct(const Domain& domain, Point2 x, std::vector<Point2> prefix, double h, int m_max,
                             const HarnessOptions& options) {
    require_positive_h(h);
    if (m_max < 1) throw Error(ErrorKind::InvalidArgument, "m_max must be at least 1");
    if (prefix.size() < 2) throw Error(ErrorKind::PrefixTooShort, "the prefix needs at least two points");

    Lemma31Run run;
    run.x = x;
    run.h = h;
    run.m_max = m_max;
    run.options = options;
    const auto seq = make_sequence_prefix(domain, prefix, x, options.tol, options.engine);
    run.prefix = std::move(prefix);
    run.prefix_products = seq.pair_products;
    run.product_slack = seq.product_slack;
    const auto diag = sequence_diagnostics(seq, 2);

    // N(m): least index past N(m-1) whose tail products all reach m (up to the product slack).
    std::vector<Arc> betas;
    std::size_t next = 0;
    for (int m = 1; m <= m_max; ++m) {
        std::size_t n = next;
        while (n < diag.growth.size() && diag.growth[n] < m - run.product_slack) ++n;
        if (n >= diag.growth.size())
            throw Error(ErrorKind::PrefixTooShort,
                        "no index reaches tail products >= " + std::to_string(m) + " within the prefix");
        run.selected.push_back(n);
        next = n + 1;

        auto cert = short_arc(domain, x, run.prefix[n], h, options.engine);
        const double len = cert.arc.qh_length();
        if (len < m - 1e-6)
            throw Error(ErrorKind::PrefixTooShort,
                        "arc to the selected point has length " + std::to_string(len) + " < " + std::to_string(m));
        betas.push_back(len - m > kSnapTol ? subarc_between(domain, cert.arc, 0.0, m) : cert.arc);
        run.trim_error = std::max(run.trim_error, std::fabs(betas.back().qh_length() - m));
        run.alphas.push_back(std::move(cert));
    }

    std::vector<Point2> anchors{x};
    for (const auto i : run.selected) anchors.push_back(run.prefix[i]);
    std::vector<const Arc*> arcs;
    for (const auto& b : betas) arcs.push_back(&b);
    run.delta = run_delta(domain, anchors, arcs, h, options);

    run.maps = make_map_family(domain, std::move(betas), std::vector<double>(static_cast<std::size_t>(m_max), 0.0));
    run.bound = 4.0 * run.delta.estimate.delta_hat + 2.0 * h;
    run.slack = options.tol + 4.0 * run.delta.estimate.slack;
    run.displacements = displacement_report(domain, run.maps, run.bound, run.slack, options);
    run.composition = composition_check(domain, run.maps, options.composition_samples);
    return run;
}

bool Theorem13Run::pass() const {
    return shortness_pass && stars_pass && divergence_pass && composition.pass &&
           std::all_of(displacements.begin(), displacements.end(), [](const auto& r) { return r.pass; });
}

Theorem13Run theorem13_construct(const Domain& domain, Point2 z, std::vector<Point2> prefix_a,
                                 std::vector<Point2> prefix_b, double h, int i_max, const HarnessOptions& options) {
    require_positive_h(h);
    if (i_max < 1) throw Error(ErrorKind::InvalidArgument, "i_max must be at least 1");
    Theorem13Run run;
    run.z = z;
    run.h = h;
    run.i_max = i_max;
    run.options = options;
    run.prefix_a = std::move(prefix_a);
    run.prefix_b = std::move(prefix_b);
    const std::size_t n = std::min(run.prefix_a.size(), run.prefix_b.size());
    if (n < static_cast<std::size_t>(i_max))
        throw Error(ErrorKind::NormalizationFailed, "prefixes are shorter than i_max");

    // Bounded cross products are what separates the two limit points.
    for (std::size_t i = 0; i < n; ++i)
        run.cross_products.push_back(
            gromov_product(domain, run.prefix_a[i], run.prefix_b[i], z, options.tol, options.engine).value);
    run.cross_growth = *std::max_element(run.cross_products.begin(), run.cross_products.end()) - run.cross_products[0];
    if (run.cross_growth > 10.0 * h)
        throw Error(ErrorKind::SequencesEquivalent,
                    "cross products grow by " + std::to_string(run.cross_growth) + " > 10h across the prefix");

    // Greedy normalization: cross products within h of every kept index, side lengths growing by 3h.
    std::map<std::size_t, ShortArcCert> beta_cache, gamma_cache;
    auto beta = [&](std::size_t i) -> const ShortArcCert& {
        auto it = beta_cache.find(i);
        if (it == beta_cache.end()) it = beta_cache.emplace(i, short_arc(domain, z, run.prefix_a[i], h, options.engine)).first;
        return it->second;
    };
    auto gamma = [&](std::size_t i) -> const ShortArcCert& {
        auto it = gamma_cache.find(i);
        if (it == gamma_cache.end()) it = gamma_cache.emplace(i, short_arc(domain, z, run.prefix_b[i], h, options.engine)).first;
        return it->second;
    };
    run.selected.push_back(0);
    for (std::size_t j = 1; j < n && run.selected.size() < static_cast<std::size_t>(i_max); ++j) {
        const bool products_ok = std::all_of(run.selected.begin(), run.selected.end(), [&](std::size_t k) {
            return std::fabs(run.cross_products[j] - run.cross_products[k]) <= h;
        });
        if (!products_ok) continue;
        const std::size_t last = run.selected.back();
        if (beta(j).arc.qh_length() < beta(last).arc.qh_length() + 3.0 * h) continue;
        if (gamma(j).arc.qh_length() < gamma(last).arc.qh_length() + 3.0 * h) continue;
        run.selected.push_back(j);
    }
    if (run.selected.size() < static_cast<std::size_t>(i_max))
        throw Error(ErrorKind::NormalizationFailed, "only " + std::to_string(run.selected.size()) +
                                                        " indices satisfy the normalization; need " +
                                                        std::to_string(i_max));

    std::vector<Arc> alpha_arcs;
    std::vector<double> anchors;
    for (const auto i : run.selected) {
        run.betas.push_back(beta(i));
        run.gammas.push_back(gamma(i));
        run.alphas.push_back(short_arc(domain, run.prefix_a[i], run.prefix_b[i], h, options.engine));
        run.subdivisions.push_back(subdivide_triangle(domain, run.betas.back(), run.gammas.back(), run.alphas.back(), h));
        run.shortness_pass = run.shortness_pass && is_h_short(run.betas.back(), h) &&
                             is_h_short(run.gammas.back(), h) && is_h_short(run.alphas.back(), h);
        run.stars_pass = run.stars_pass && run.subdivisions.back().stars_within();
        alpha_arcs.push_back(run.alphas.back().arc);
        anchors.push_back(run.subdivisions.back().alpha.t_w);
    }

    const Arc& alpha1 = run.alphas.front().arc;
    run.s1 = point_at_qh_length(domain, alpha1, 0.5 * alpha1.qh_length());
    run.divergence_slack = options.tol;
    for (const auto i : run.selected) {
        run.divergence.push_back({i, estimate_mid(domain, run.prefix_a[i], run.s1, options.tol, options.engine),
                                  estimate_mid(domain, run.prefix_b[i], run.s1, options.tol, options.engine)});
    }
    const double step = 3.0 * h - 2.0 * run.divergence_slack;
    for (std::size_t r = 1; r < run.divergence.size(); ++r) {
        const auto& a = run.divergence[r - 1];
        const auto& b = run.divergence[r];
        if (b.k_x - a.k_x < step || b.k_y - a.k_y < step) run.divergence_pass = false;
    }

    std::vector<Point2> points{z, run.s1};
    std::vector<const Arc*> arcs;
    for (std::size_t r = 0; r < run.selected.size(); ++r) {
        const auto& t = run.subdivisions[r];
        for (const Point2 p : {t.x, t.y, t.alpha.w, t.alpha.p, t.beta.w, t.beta.p, t.gamma.w, t.gamma.p})
            points.push_back(p);
        arcs.push_back(&run.alphas[r].arc);
        arcs.push_back(&run.betas[r].arc);
        arcs.push_back(&run.gammas[r].arc);
    }
    run.delta = run_delta(domain, points, arcs, h, options);

    run.maps = make_map_family(domain, std::move(alpha_arcs), std::move(anchors));
    run.bound = 12.0 * (run.delta.estimate.delta_hat + h);
    run.slack = options.tol + 12.0 * run.delta.estimate.slack;
    run.displacements = displacement_report(domain, run.maps, run.bound, run.slack, options);
    run.composition = composition_check(domain, run.maps, options.composition_samples);
    return run;
}

}  // namespace qhg
