#include "qhg/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qhg {

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

json to_json(Point2 p) { return json::array({num(p.x), num(p.y)}); }

namespace {

json arc_summary(const Arc& a) {
    return {{"from", to_json(a.front())},
            {"to", to_json(a.back())},
            {"vertices", a.size()},
            {"qh_length", num(a.qh_length())},
            {"euclidean_length", num(a.euclidean_length())}};
}

json numbers(const std::vector<double>& v) {
    json out = json::array();
    for (const double d : v) out.push_back(num(d));
    return out;
}

}  // namespace

json to_json(const DistanceEstimate& e) {
    json j{{"lower", num(e.lower)}, {"upper", num(e.upper)}, {"tol", num(e.tol)}, {"direct", e.direct},
           {"level_uppers", numbers(e.level_uppers)}, {"level_resolutions", numbers(e.level_resolutions)},
           {"level_nodes", e.level_nodes}};
    if (e.path) j["path"] = arc_summary(*e.path);
    return j;
}

json to_json(const ShortArcCert& c) {
    return {{"arc", arc_summary(c.arc)},
            {"h_achieved", num(c.h_achieved)},
            {"k_lower", num(c.k_lower)},
            {"k_upper", num(c.k_upper)}};
}

json to_json(const ProductRecord& r) {
    return {{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"w", to_json(r.w)}, {"value", num(r.value)},
            {"distance_slack", num(r.distance_slack)}};
}

json to_json(const DeltaEstimate& d) {
    json j{{"delta_hat", num(d.delta_hat)},
           {"slack", num(d.slack)},
           {"points", d.points.size()},
           {"quadruples_checked", d.quadruples_checked},
           {"exhaustive", d.exhaustive}};
    if (d.witness) {
        json w = json::object();
        const char* names[] = {"x", "y", "z", "w"};
        for (int k = 0; k < 4; ++k) w[names[k]] = to_json(d.points[(*d.witness)[static_cast<std::size_t>(k)]]);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json to_json(const SequenceDiagnostics& d) {
    return {{"growth", numbers(d.growth)}, {"tail", d.tail}, {"tail_min", num(d.tail_min)}, {"slack", num(d.slack)}};
}

json to_json(const EquivalenceDiagnostics& d) {
    return {{"cross_products", numbers(d.cross_products)}, {"growth", numbers(d.growth)}, {"slack", num(d.slack)}};
}

json to_json(const SandwichReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"z", to_json(s.z)},
                           {"t", num(s.t)},
                           {"k_xz", num(s.k_xz)},
                           {"product", num(s.product)},
                           {"slack", num(s.slack)},
                           {"lower_margin", num(s.lower_margin)},
                           {"upper_margin", num(s.upper_margin)},
                           {"pass", s.pass}});
    return {{"h", num(r.h)}, {"tol", num(r.tol)}, {"samples", samples}, {"all_pass", r.all_pass}};
}

json to_json(const Subdivision& s) {
    return {{"side", arc_summary(s.side)},
            {"w", to_json(s.w)},
            {"p", to_json(s.p)},
            {"t_w", num(s.t_w)},
            {"t_p", num(s.t_p)},
            {"first_cut", num(s.first_cut)},
            {"last_cut", num(s.last_cut)},
            {"prime_length", num(s.prime_length)},
            {"star_length", num(s.star_length)},
            {"doubleprime_length", num(s.doubleprime_length)},
            {"star_within", s.star_within}};
}

json to_json(const TriangleSubdivision& t) {
    return {{"z", to_json(t.z)},
            {"x", to_json(t.x)},
            {"y", to_json(t.y)},
            {"k_zx", num(t.k_zx)},
            {"k_zy", num(t.k_zy)},
            {"k_xy", num(t.k_xy)},
            {"product_xy_z", num(t.xy_z)},
            {"product_zy_x", num(t.zy_x)},
            {"product_zx_y", num(t.zx_y)},
            {"slack", num(t.slack)},
            {"h", num(t.h)},
            {"alpha", to_json(t.alpha)},
            {"beta", to_json(t.beta)},
            {"gamma", to_json(t.gamma)},
            {"stars_within", t.stars_within()}};
}

json to_json(const DisplacementEntry& e) {
    return {{"i", e.i},         {"j", e.j},         {"sup", num(e.sup)},       {"witness", to_json(e.witness)},
            {"samples", e.samples}, {"bound", num(e.bound)}, {"slack", num(e.slack)}, {"margin", num(e.margin)},
            {"pass", e.pass}};
}

json to_json(const CompositionReport& c) {
    return {{"max_error", num(c.max_error)}, {"triples", c.triples}, {"samples", c.samples},
            {"tolerance", num(c.tolerance)}, {"pass", c.pass}};
}

json to_json(const DeltaSummary& d) {
    json j = to_json(d.estimate);
    j["pitch"] = num(d.pitch);
    j["tol"] = num(d.tol);
    return j;
}

namespace {

json displacement_table(const std::vector<DisplacementEntry>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back(to_json(r));
    return out;
}

json options_json(const HarnessOptions& o) {
    return {{"tol", num(o.tol)},
            {"seed", o.seed},
            {"displacement_samples", o.displacement_samples},
            {"max_displacement_samples", o.max_displacement_samples},
            {"sup_change", num(o.sup_change)},
            {"composition_samples", o.composition_samples},
            {"delta_max_points", o.delta_max_points},
            {"delta_sample_budget", o.delta_sample_budget},
            {"max_halvings", o.engine.max_halvings}};
}

}  // namespace

json to_json(const Lemma31Run& run) {
    json prefix = json::array();
    for (const Point2 p : run.prefix) prefix.push_back(to_json(p));
    json products = json::array();
    for (const auto& row : run.prefix_products) products.push_back(numbers(row));
    json alphas = json::array();
    for (const auto& a : run.alphas) alphas.push_back(to_json(a));
    json betas = json::array();
    for (const auto& b : run.maps.arcs) betas.push_back(arc_summary(b));
    json selected = json::array();
    for (const auto n : run.selected) selected.push_back(n);
    return {{"basepoint", to_json(run.x)},
            {"prefix", prefix},
            {"h", num(run.h)},
            {"m_max", run.m_max},
            {"options", options_json(run.options)},
            {"prefix_products", products},
            {"product_slack", num(run.product_slack)},
            {"selected_indices", selected},
            {"alphas", alphas},
            {"betas", betas},
            {"trim_error", num(run.trim_error)},
            {"delta", to_json(run.delta)},
            {"bound", num(run.bound)},
            {"slack", num(run.slack)},
            {"displacements", displacement_table(run.displacements)},
            {"composition", to_json(run.composition)},
            {"pass", run.pass()}};
}

json to_json(const Theorem13Run& run) {
    json pa = json::array(), pb = json::array();
    for (const Point2 p : run.prefix_a) pa.push_back(to_json(p));
    for (const Point2 p : run.prefix_b) pb.push_back(to_json(p));
    json sides = json::array();
    for (std::size_t r = 0; r < run.selected.size(); ++r)
        sides.push_back({{"index", run.selected[r]},
                         {"beta", to_json(run.betas[r])},
                         {"gamma", to_json(run.gammas[r])},
                         {"alpha", to_json(run.alphas[r])},
                         {"subdivision", to_json(run.subdivisions[r])}});
    json divergence = json::array();
    for (const auto& d : run.divergence)
        divergence.push_back({{"index", d.index}, {"k_x_s1", num(d.k_x)}, {"k_y_s1", num(d.k_y)}});
    return {{"basepoint", to_json(run.z)},
            {"prefix_a", pa},
            {"prefix_b", pb},
            {"h", num(run.h)},
            {"i_max", run.i_max},
            {"options", options_json(run.options)},
            {"cross_products", numbers(run.cross_products)},
            {"cross_growth", num(run.cross_growth)},
            {"selected_indices", run.selected},
            {"triangles", sides},
            {"shortness_pass", run.shortness_pass},
            {"stars_pass", run.stars_pass},
            {"s1", to_json(run.s1)},
            {"divergence", divergence},
            {"divergence_slack", num(run.divergence_slack)},
            {"divergence_pass", run.divergence_pass},
            {"delta", to_json(run.delta)},
            {"bound", num(run.bound)},
            {"slack", num(run.slack)},
            {"displacements", displacement_table(run.displacements)},
            {"composition", to_json(run.composition)},
            {"pass", run.pass()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qhg
