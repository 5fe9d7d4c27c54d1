// qhg: command-line front end for the quasihyperbolic geometry toolkit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qhg/error.hpp"
#include "qhg/gromov.hpp"
#include "qhg/harness.hpp"
#include "qhg/qh_engine.hpp"
#include "qhg/report.hpp"
#include "qhg/shortarc.hpp"

using namespace qhg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFinding = 2;

struct Config {
    std::string domain_arg;
    double tol = 1e-2;
    double h = 0.1;
    std::uint64_t seed = 0;
    std::string out;
    std::string csv;
    int max_halvings = 6;
    std::string annulus;

    // point arguments
    std::string from, to, x, y, w, z, basepoint;
    std::string points, prefix, prefix_a, prefix_b;
    std::size_t samples = 10;
    std::size_t tail = 0;
    double scale = 0.0;
    int mmax = 5;
    int imax = 4;
    std::size_t delta_points = 160;
};

Point2 parse_point(const std::string& s, const char* what) {
    std::istringstream in(s);
    Point2 p;
    char comma = 0;
    if (!(in >> p.x >> comma >> p.y) || comma != ',')
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": expected x,y but got '" + s + "'");
    return p;
}

Domain load_domain(const std::string& arg) {
    if (arg.empty()) throw Error(ErrorKind::InvalidArgument, "--domain is required");
    json j;
    try {
        if (arg.front() == '{') {
            j = json::parse(arg);
        } else {
            std::ifstream in(arg);
            if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open domain file " + arg);
            j = json::parse(in);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("domain JSON: ") + e.what());
    }
    return Domain::from_json(j);
}

std::vector<Point2> load_points(const std::string& path, const char* flag) {
    if (path.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    return read_points_csv(in);
}

EngineOptions engine_options(const Config& c) {
    EngineOptions e;
    e.max_halvings = c.max_halvings;
    if (!c.annulus.empty()) {
        const Point2 r = parse_point(c.annulus, "--annulus");
        e.r_min = r.x;
        e.r_max = r.y;
    }
    return e;
}

json base_config(const std::string& command, const Config& c, const Domain& d) {
    json cfg{{"command", command}, {"domain", d.to_json()}, {"tol", num(c.tol)}, {"h", num(c.h)},
             {"seed", c.seed}, {"max_halvings", c.max_halvings}};
    if (!c.annulus.empty()) cfg["annulus"] = c.annulus;
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

void write_arc(const std::string& path, const Arc& arc) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    write_arc_csv(out, arc);
}

int emit(const std::string& command, const Config& c, const Domain& d, json config_extra, json result, bool pass) {
    json cfg = base_config(command, c, d);
    cfg.update(config_extra);
    write_text(c.out, dump({{"config", cfg}, {"result", result}, {"pass", pass}}));
    return pass ? kExitOk : kExitFinding;
}

int run_distance(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 a = parse_point(c.from, "--from");
    const Point2 b = parse_point(c.to, "--to");
    const auto e = qh_distance(d, a, b, c.tol, engine_options(c));
    if (e.path) write_arc(c.csv, *e.path);
    return emit("distance", c, d, {{"from", to_json(a)}, {"to", to_json(b)}}, to_json(e), true);
}

int run_arc(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 a = parse_point(c.from, "--from");
    const Point2 b = parse_point(c.to, "--to");
    const auto cert = short_arc(d, a, b, c.h, engine_options(c));
    write_arc(c.csv, cert.arc);
    json r = to_json(cert);
    const bool ok = is_h_short(cert, c.h);
    r["is_h_short"] = ok;
    return emit("arc", c, d, {{"from", to_json(a)}, {"to", to_json(b)}}, r, ok);
}

int run_product(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 x = parse_point(c.x, "--x");
    const Point2 y = parse_point(c.y, "--y");
    const Point2 w = parse_point(c.w, "--w");
    const auto r = gromov_product(d, x, y, w, c.tol, engine_options(c));
    return emit("product", c, d, {}, to_json(r), true);
}

int run_delta_cmd(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    auto pts = load_points(c.points, "--points");
    const auto m = distance_matrix(d, std::move(pts), c.tol, engine_options(c));
    DeltaOptions o;
    o.seed = c.seed;
    const auto est = four_point_delta(m, o);
    return emit("delta", c, d, {{"points_file", c.points}}, to_json(est), true);
}

int run_sequence(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    auto pts = load_points(c.prefix, "--prefix");
    const Point2 w = parse_point(c.basepoint, "--basepoint");
    const std::size_t tail = c.tail == 0 ? pts.size() : c.tail;
    json extra{{"prefix_file", c.prefix}, {"basepoint", to_json(w)}, {"tail", tail}, {"scale", num(c.scale)}};
    const auto seq = make_sequence_prefix(d, pts, w, c.tol, engine_options(c));
    const auto diag = sequence_diagnostics(seq, tail);
    json r{{"diagnostics", to_json(diag)}, {"gromov_like", diag.gromov_like(c.scale)}};
    json products = json::array();
    for (const auto& row : seq.pair_products) {
        json jr = json::array();
        for (const double v : row) jr.push_back(num(v));
        products.push_back(jr);
    }
    r["pair_products"] = products;
    if (!c.prefix_b.empty()) {
        const auto other = load_points(c.prefix_b, "--prefix-b");
        const auto eq = equivalence_diagnostics(d, pts, other, w, c.tol, engine_options(c));
        r["equivalence"] = to_json(eq);
        r["equivalent_at_scale"] = eq.equivalent_at(c.scale);
        extra["prefix_b_file"] = c.prefix_b;
    }
    return emit("sequence", c, d, extra, r, true);
}

int run_sandwich(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 a = parse_point(c.from, "--from");
    const Point2 b = parse_point(c.to, "--to");
    const auto cert = short_arc(d, a, b, c.h, engine_options(c));
    write_arc(c.csv, cert.arc);
    const auto rep = verify_product_sandwich(d, cert, c.h, c.samples, c.tol, engine_options(c));
    json r{{"certificate", to_json(cert)}, {"sandwich", to_json(rep)}};
    return emit("sandwich", c, d, {{"from", to_json(a)}, {"to", to_json(b)}, {"samples", c.samples}}, r, rep.all_pass);
}

int run_subdivide(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 z = parse_point(c.z, "--z");
    const Point2 x = parse_point(c.x, "--x");
    const Point2 y = parse_point(c.y, "--y");
    const auto e = engine_options(c);
    if (z == x || z == y || x == y) throw Error(ErrorKind::NotATriangle, "triangle vertices coincide");
    const auto beta = short_arc(d, z, x, c.h, e);
    const auto gamma = short_arc(d, z, y, c.h, e);
    const auto alpha = short_arc(d, x, y, c.h, e);
    const auto t = subdivide_triangle(d, beta, gamma, alpha, c.h);
    if (!c.csv.empty()) {
        const auto pieces = [&](const char* side, const Subdivision& s) {
            if (s.prime) write_arc(c.csv + "_" + side + "_prime.csv", *s.prime);
            if (s.star) write_arc(c.csv + "_" + side + "_star.csv", *s.star);
            if (s.doubleprime) write_arc(c.csv + "_" + side + "_doubleprime.csv", *s.doubleprime);
        };
        pieces("alpha", t.alpha);
        pieces("beta", t.beta);
        pieces("gamma", t.gamma);
    }
    json r{{"beta", to_json(beta)}, {"gamma", to_json(gamma)}, {"alpha", to_json(alpha)}, {"subdivision", to_json(t)}};
    return emit("subdivide", c, d, {{"z", to_json(z)}, {"x", to_json(x)}, {"y", to_json(y)}}, r, t.stars_within());
}

HarnessOptions harness_options(const Config& c) {
    HarnessOptions o;
    o.tol = c.tol;
    o.seed = c.seed;
    o.delta_max_points = c.delta_points;
    o.engine = engine_options(c);
    return o;
}

int run_lemma31(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 x = parse_point(c.basepoint, "--basepoint");
    auto prefix = load_points(c.prefix, "--prefix");
    const auto run = lemma31_construct(d, x, std::move(prefix), c.h, c.mmax, harness_options(c));
    return emit("lemma31", c, d, {{"prefix_file", c.prefix}, {"mmax", c.mmax}, {"delta_points", c.delta_points}},
                to_json(run), run.pass());
}

int run_theorem13(const Config& c) {
    const Domain d = load_domain(c.domain_arg);
    const Point2 z = parse_point(c.basepoint, "--basepoint");
    auto a = load_points(c.prefix_a, "--prefix-a");
    auto b = load_points(c.prefix_b, "--prefix-b");
    const auto run = theorem13_construct(d, z, std::move(a), std::move(b), c.h, c.imax, harness_options(c));
    return emit("theorem13", c, d,
                {{"prefix_a_file", c.prefix_a},
                 {"prefix_b_file", c.prefix_b},
                 {"imax", c.imax},
                 {"delta_points", c.delta_points}},
                to_json(run), run.pass());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasihyperbolic distances, short arcs and Gromov-boundary constructions in planar domains"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--domain", c.domain_arg, "Domain JSON file (or inline JSON)")->required();
        s->add_option("--tol", c.tol, "Distance tolerance")->default_val(1e-2)->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "Seed for any sampling")->default_val(0);
        s->add_option("--out", c.out, "Report path (stdout when omitted)");
        s->add_option("--max-halvings", c.max_halvings, "Engine refinement cap")->default_val(6);
        s->add_option("--annulus", c.annulus, "Radial working limits rmin,rmax");
    };
    auto with_h = [&](CLI::App* s) {
        s->add_option("--h", c.h, "Shortness parameter")->default_val(0.1)->check(CLI::PositiveNumber);
    };

    auto* distance = app.add_subcommand("distance", "Estimate k_X(from, to)");
    common(distance);
    distance->add_option("--from", c.from)->required();
    distance->add_option("--to", c.to)->required();
    distance->add_option("--csv", c.csv, "Write the realizing path");

    auto* arc = app.add_subcommand("arc", "Certified h-short arc");
    common(arc);
    with_h(arc);
    arc->add_option("--from", c.from)->required();
    arc->add_option("--to", c.to)->required();
    arc->add_option("--csv", c.csv, "Write the arc");

    auto* product = app.add_subcommand("product", "Gromov product (x|y)_w");
    common(product);
    product->add_option("--x", c.x)->required();
    product->add_option("--y", c.y)->required();
    product->add_option("--w", c.w)->required();

    auto* delta = app.add_subcommand("delta", "Empirical four-point constant of a point set");
    common(delta);
    delta->add_option("--points", c.points, "CSV point file")->required();

    auto* sequence = app.add_subcommand("sequence", "Finite-prefix Gromov sequence diagnostics");
    common(sequence);
    sequence->add_option("--prefix", c.prefix, "CSV point file")->required();
    sequence->add_option("--basepoint", c.basepoint)->required();
    sequence->add_option("--tail", c.tail, "Tail length (default: whole prefix)");
    sequence->add_option("--scale", c.scale, "Scale T for the Gromov-like predicate")->default_val(0.0);
    sequence->add_option("--prefix-b", c.prefix_b, "Second prefix for the equivalence test");

    auto* sandwich = app.add_subcommand("sandwich", "Check the Gromov-product sandwich along a short arc");
    common(sandwich);
    with_h(sandwich);
    sandwich->add_option("--from", c.from)->required();
    sandwich->add_option("--to", c.to)->required();
    sandwich->add_option("--samples", c.samples)->default_val(10);
    sandwich->add_option("--csv", c.csv, "Write the arc");

    auto* subdivide = app.add_subcommand("subdivide", "Subdivide a short-arc triangle");
    common(subdivide);
    with_h(subdivide);
    subdivide->add_option("--z", c.z)->required();
    subdivide->add_option("--x", c.x)->required();
    subdivide->add_option("--y", c.y)->required();
    subdivide->add_option("--csv", c.csv, "Path prefix for the piece CSV files");

    auto* lemma = app.add_subcommand("lemma31", "Nested short arcs toward a Gromov sequence");
    common(lemma);
    with_h(lemma);
    lemma->add_option("--basepoint", c.basepoint)->required();
    lemma->add_option("--prefix", c.prefix)->required();
    lemma->add_option("--mmax", c.mmax)->default_val(5)->check(CLI::PositiveNumber);
    lemma->add_option("--delta-points", c.delta_points, "Point cap for delta_hat")->default_val(160);

    auto* theorem = app.add_subcommand("theorem13", "Short-arc family joining two boundary points");
    common(theorem);
    with_h(theorem);
    theorem->add_option("--basepoint", c.basepoint)->required();
    theorem->add_option("--prefix-a", c.prefix_a)->required();
    theorem->add_option("--prefix-b", c.prefix_b)->required();
    theorem->add_option("--imax", c.imax)->default_val(4)->check(CLI::PositiveNumber);
    theorem->add_option("--delta-points", c.delta_points, "Point cap for delta_hat")->default_val(160);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (distance->parsed()) return run_distance(c);
        if (arc->parsed()) return run_arc(c);
        if (product->parsed()) return run_product(c);
        if (delta->parsed()) return run_delta_cmd(c);
        if (sequence->parsed()) return run_sequence(c);
        if (sandwich->parsed()) return run_sandwich(c);
        if (subdivide->parsed()) return run_subdivide(c);
        if (lemma->parsed()) return run_lemma31(c);
        if (theorem->parsed()) return run_theorem13(c);
    } catch (const Error& e) {
        std::cerr << dump({{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << dump({{"error", "Internal"}, {"message", e.what()}});
        return kExitUsage;
    }
    return kExitUsage;
}
