#include "qhg/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhg/error.hpp"

namespace qhg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int orientation(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

// Closed segments [a,b] and [c,d] share at least one point.
bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

// Even-odd rule; points on edges are reported through the distance check instead.
bool inside_polygon(const std::vector<Point2>& v, Point2 p) {
    bool inside = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double xc = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

Point2 nearest_on_polygon(const std::vector<Point2>& v, Point2 p) {
    Point2 best = v.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 c = closest_on_segment(p, v[i], v[(i + 1) % v.size()]);
        const double d = distance(p, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double origin_to_segment(Point2 p, Point2 q) { return norm(closest_on_segment({0.0, 0.0}, p, q)); }

double get_param(const nlohmann::json& params, const char* key) {
    if (!params.contains(key) || !params.at(key).is_number())
        throw Error(ErrorKind::InvalidArgument, std::string("domain params: missing numeric '") + key + "'");
    return params.at(key).get<double>();
}

void validate(const Domain::Shape& shape) {
    std::visit(overloaded{
                   [](const Annulus& a) {
                       if (!(a.r_in >= 0.0 && a.r_out > a.r_in && std::isfinite(a.r_out)))
                           throw Error(ErrorKind::InvalidArgument, "annulus requires 0 <= r_in < r_out < inf");
                   },
                   [](const AxisRect& r) {
                       if (!(r.x0 < r.x1 && r.y0 < r.y1))
                           throw Error(ErrorKind::InvalidArgument, "axis_rect requires x0 < x1 and y0 < y1");
                   },
                   [](const PolygonComplement& pc) {
                       if (pc.vertices.size() < 3)
                           throw Error(ErrorKind::InvalidArgument, "polygon_complement needs at least 3 vertices");
                       for (const auto& v : pc.vertices)
                           if (!is_finite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite polygon vertex");
                   },
                   [](const auto&) {},
               },
               shape);
}

}  // namespace

std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::HalfPlane: return "half_plane";
        case DomainKind::PuncturedPlane: return "punctured_plane";
        case DomainKind::UnitDisk: return "unit_disk";
        case DomainKind::Annulus: return "annulus";
        case DomainKind::AxisRect: return "axis_rect";
        case DomainKind::PolygonComplement: return "polygon_complement";
    }
    return "unknown";
}

Domain::Domain(Shape shape) : shape_(std::move(shape)) { validate(shape_); }

Domain Domain::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw Error(ErrorKind::InvalidArgument, "domain spec must be an object with a string 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (kind == "half_plane") return half_plane();
    if (kind == "punctured_plane") return punctured_plane();
    if (kind == "unit_disk") return unit_disk();
    if (kind == "annulus") return annulus(get_param(params, "r_in"), get_param(params, "r_out"));
    if (kind == "axis_rect")
        return axis_rect(get_param(params, "x0"), get_param(params, "y0"), get_param(params, "x1"),
                         get_param(params, "y1"));
    if (kind == "polygon_complement") {
        if (!params.contains("vertices") || !params.at("vertices").is_array())
            throw Error(ErrorKind::InvalidArgument, "polygon_complement needs params.vertices");
        std::vector<Point2> vs;
        for (const auto& v : params.at("vertices")) {
            if (!v.is_array() || v.size() != 2)
                throw Error(ErrorKind::InvalidArgument, "polygon vertex must be [x, y]");
            vs.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        return polygon_complement(std::move(vs));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown domain kind '" + kind + "'");
}

nlohmann::json Domain::to_json() const {
    nlohmann::json params = nlohmann::json::object();
    std::visit(overloaded{
                   [&](const Annulus& a) {
                       params["r_in"] = a.r_in;
                       params["r_out"] = a.r_out;
                   },
                   [&](const AxisRect& r) {
                       params["x0"] = r.x0;
                       params["y0"] = r.y0;
                       params["x1"] = r.x1;
                       params["y1"] = r.y1;
                   },
                   [&](const PolygonComplement& pc) {
                       auto arr = nlohmann::json::array();
                       for (const auto& v : pc.vertices) arr.push_back({v.x, v.y});
                       params["vertices"] = std::move(arr);
                   },
                   [](const auto&) {},
               },
               shape_);
    return {{"kind", to_string(kind())}, {"params", params}};
}

DomainKind Domain::kind() const { return static_cast<DomainKind>(shape_.index()); }

bool Domain::is_convex() const {
    const auto k = kind();
    return k == DomainKind::HalfPlane || k == DomainKind::UnitDisk || k == DomainKind::AxisRect;
}

double Domain::raw_boundary_distance(Point2 p) const {
    return std::visit(overloaded{
                          [&](const HalfPlane&) { return std::fabs(p.y); },
                          [&](const PuncturedPlane&) { return norm(p); },
                          [&](const UnitDisk&) { return std::fabs(1.0 - norm(p)); },
                          [&](const Annulus& a) {
                              const double r = norm(p);
                              return std::min(std::fabs(r - a.r_in), std::fabs(a.r_out - r));
                          },
                          [&](const AxisRect& r) {
                              const double dx = std::min(p.x - r.x0, r.x1 - p.x);
                              const double dy = std::min(p.y - r.y0, r.y1 - p.y);
                              if (dx >= 0.0 && dy >= 0.0) return std::min(dx, dy);
                              return std::hypot(std::min(dx, 0.0), std::min(dy, 0.0));
                          },
                          [&](const PolygonComplement& pc) { return distance(p, nearest_on_polygon(pc.vertices, p)); },
                      },
                      shape_);
}

bool Domain::contains(Point2 p) const {
    if (!is_finite(p)) return false;
    return std::visit(overloaded{
                          [&](const HalfPlane&) { return p.y > 0.0; },
                          [&](const PuncturedPlane&) { return p.x != 0.0 || p.y != 0.0; },
                          [&](const UnitDisk&) { return norm(p) < 1.0; },
                          [&](const Annulus& a) {
                              const double r = norm(p);
                              return r > a.r_in && r < a.r_out;
                          },
                          [&](const AxisRect& r) { return p.x > r.x0 && p.x < r.x1 && p.y > r.y0 && p.y < r.y1; },
                          [&](const PolygonComplement& pc) {
                              return !inside_polygon(pc.vertices, p) &&
                                     distance(p, nearest_on_polygon(pc.vertices, p)) > 0.0;
                          },
                      },
                      shape_);
}

double Domain::boundary_distance(Point2 p) const {
    if (!contains(p))
        throw Error(ErrorKind::PointOutsideDomain,
                    "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") not in " + to_string(kind()));
    return raw_boundary_distance(p);
}

Point2 Domain::boundary_distance_gradient(Point2 p) const {
    auto unit = [](Point2 v) -> Point2 {
        const double n = norm(v);
        return n > 0.0 ? (1.0 / n) * v : Point2{0.0, 0.0};
    };
    return std::visit(overloaded{
                          [&](const HalfPlane&) { return Point2{0.0, 1.0}; },
                          [&](const PuncturedPlane&) { return unit(p); },
                          [&](const UnitDisk&) { return -1.0 * unit(p); },
                          [&](const Annulus& a) {
                              const double r = norm(p);
                              return (r - a.r_in <= a.r_out - r) ? unit(p) : -1.0 * unit(p);
                          },
                          [&](const AxisRect& r) {
                              const double d[4] = {p.x - r.x0, r.x1 - p.x, p.y - r.y0, r.y1 - p.y};
                              const Point2 g[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                              return g[std::min_element(d, d + 4) - d];
                          },
                          [&](const PolygonComplement& pc) { return unit(p - nearest_on_polygon(pc.vertices, p)); },
                      },
                      shape_);
}

bool Domain::segment_in_domain(Point2 p, Point2 q) const {
    if (!contains(p) || !contains(q))
        throw Error(ErrorKind::PointOutsideDomain, "segment endpoint outside " + to_string(kind()));
    return std::visit(overloaded{
                          [&](const PuncturedPlane&) { return origin_to_segment(p, q) > 0.0; },
                          [&](const Annulus& a) { return origin_to_segment(p, q) > a.r_in; },
                          [&](const PolygonComplement& pc) {
                              const auto& v = pc.vertices;
                              for (std::size_t i = 0; i < v.size(); ++i)
                                  if (segments_touch(p, q, v[i], v[(i + 1) % v.size()])) return false;
                              return true;
                          },
                          // Convex kinds: both endpoints inside is enough.
                          [](const auto&) { return true; },
                      },
                      shape_);
}

bool Domain::segment_in_domain_sampled(Point2 p, Point2 q) const {
    const double d0 = boundary_distance(p);
    const double d1 = boundary_distance(q);
    const double len = distance(p, q);
    if (len == 0.0) return true;
    const double floor = 1e-12 * std::max({d0, d1, len});
    double s = 0.0;
    for (int step = 0; step < 10'000'000; ++step) {
        const Point2 pt = lerp(p, q, std::min(s / len, 1.0));
        if (!contains(pt)) return false;
        const double d = raw_boundary_distance(pt);
        if (d < floor) return false;
        // The open ball of radius d around pt lies in X.
        if (s + d >= len) return true;
        s += 0.999 * d;
    }
    return false;
}

std::optional<Box> Domain::bounding_box() const {
    return std::visit(overloaded{
                          [](const UnitDisk&) -> std::optional<Box> { return Box{{-1.0, -1.0}, {1.0, 1.0}}; },
                          [](const Annulus& a) -> std::optional<Box> {
                              return Box{{-a.r_out, -a.r_out}, {a.r_out, a.r_out}};
                          },
                          [](const AxisRect& r) -> std::optional<Box> { return Box{{r.x0, r.y0}, {r.x1, r.y1}}; },
                          [](const auto&) -> std::optional<Box> { return std::nullopt; },
                      },
                      shape_);
}

}  // namespace qhg
