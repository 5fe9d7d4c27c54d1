#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

#include "qhg/error.hpp"
#include "qhg/qh_engine.hpp"
#include "qhg/quadrature.hpp"

namespace qhg {

namespace {

// Joins leaf centers closer than this many local pitches (covers the 16-neighbor offsets
// (1,0), (1,1), (2,1) and their symmetric images on a uniform grid).
constexpr double kStencilRadius = 2.25;
constexpr int kMaxLevel = 60;

struct Cell {
    Point2 c;
    double half;
    int level;
};

struct CellKey {
    std::int64_t ix;
    std::int64_t iy;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        const auto a = static_cast<std::uint64_t>(k.ix) * 0x9E3779B97F4A7C15ULL;
        const auto b = static_cast<std::uint64_t>(k.iy) * 0xC2B2AE3D27D4EB4FULL;
        return static_cast<std::size_t>(a ^ (b + 0x165667B19E3779F9ULL + (a << 6) + (a >> 2)));
    }
};

bool radial_ok(const GraphOptions& o, Point2 c, double r) {
    const double rc = norm(c);
    if (o.r_max && rc - r > *o.r_max) return false;
    if (o.r_min && rc + r < *o.r_min) return false;
    return true;
}

bool radial_contains(const GraphOptions& o, Point2 c) {
    const double rc = norm(c);
    if (o.r_max && rc > *o.r_max) return false;
    if (o.r_min && rc < *o.r_min) return false;
    return true;
}

}  // namespace

std::size_t QhGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adjacency) n += a.size();
    return n / 2;
}

std::size_t QhGraph::add_terminal(const Domain& domain, Point2 p) {
    const double d = domain.boundary_distance(p);
    const double local = std::min(resolution, relative_pitch * d);
    const std::size_t id = nodes.size();
    nodes.push_back(p);
    pitch.push_back(local);
    adjacency.emplace_back();
    double radius = 1.5 * kStencilRadius * local;
    for (int attempt = 0; attempt < 6 && adjacency[id].empty(); ++attempt, radius *= 2.0) {
        for (std::size_t j = 0; j < id; ++j) {
            const double dist = distance(p, nodes[j]);
            if (dist > std::max(radius, 1.5 * kStencilRadius * pitch[j]) || dist == 0.0) continue;
            if (!domain.segment_in_domain(p, nodes[j])) continue;
            const double w = segment_qh_length_fast(domain, p, nodes[j]);
            adjacency[id].push_back({j, w});
            adjacency[j].push_back({id, w});
        }
    }
    return id;
}

std::vector<std::size_t> QhGraph::components() const {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(nodes.size(), unset);
    std::size_t next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        if (label[s] != unset) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const auto& e : adjacency[v])
                if (label[e.to] == unset) {
                    label[e.to] = next;
                    stack.push_back(e.to);
                }
        }
        ++next;
    }
    return label;
}

QhGraph build_graph(const Domain& domain, const Box& region, const GraphOptions& options) {
    if (!(options.resolution > 0.0) || !std::isfinite(options.resolution))
        throw Error(ErrorKind::InvalidArgument, "graph resolution must be positive");
    if (!(options.relative_pitch > 0.0)) throw Error(ErrorKind::InvalidArgument, "relative pitch must be positive");
    if (region.empty()) throw Error(ErrorKind::EmptyRegion, "region box is empty");
    const double floor = options.min_boundary_distance.value_or(options.resolution / 8.0);

    const double side = std::max(region.width(), region.height());
    const Point2 origin = region.lo;
    const Cell root{{origin.x + 0.5 * side, origin.y + 0.5 * side}, 0.5 * side, 0};

    struct Leaf {
        Point2 c;
        double size;
        int level;
    };
    std::vector<Leaf> leaves;
    std::vector<Cell> stack{root};
    while (!stack.empty()) {
        const Cell cell = stack.back();
        stack.pop_back();
        if (cell.c.x + cell.half < region.lo.x || cell.c.x - cell.half > region.hi.x ||
            cell.c.y + cell.half < region.lo.y || cell.c.y - cell.half > region.hi.y)
            continue;
        const double r = cell.half * std::sqrt(2.0);
        if (!radial_ok(options, cell.c, r)) continue;
        const bool inside = domain.contains(cell.c);
        const double d = domain.raw_boundary_distance(cell.c);
        bool split = false;
        if (!inside) {
            // Every point of the cell is within r of an exterior point, so δ <= r there.
            if (d >= r || r < floor) continue;
            split = true;
        } else {
            if (d + r < floor) continue;
            if (options.prune_lower_bound && options.prune_lower_bound(cell.c, r) > options.prune_above) continue;
            split = 2.0 * cell.half > std::min(options.resolution, options.relative_pitch * d);
        }
        if (split) {
            if (cell.level >= kMaxLevel) continue;
            const double h = 0.5 * cell.half;
            for (const double sx : {-1.0, 1.0})
                for (const double sy : {-1.0, 1.0})
                    stack.push_back({{cell.c.x + sx * h, cell.c.y + sy * h}, h, cell.level + 1});
            continue;
        }
        if (d < floor || !region.contains(cell.c) || !radial_contains(options, cell.c)) continue;
        leaves.push_back({cell.c, 2.0 * cell.half, cell.level});
        if (leaves.size() > options.max_nodes)
            throw Error(ErrorKind::ToleranceNotReached,
                        "graph exceeds node budget of " + std::to_string(options.max_nodes));
    }
    if (leaves.empty()) throw Error(ErrorKind::EmptyRegion, "no admissible nodes in region");
    std::sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) { return a.c < b.c; });

    QhGraph g;
    g.resolution = options.resolution;
    g.relative_pitch = options.relative_pitch;
    g.region = region;
    g.nodes.reserve(leaves.size());
    g.pitch.reserve(leaves.size());
    for (const auto& l : leaves) {
        g.nodes.push_back(l.c);
        g.pitch.push_back(l.size);
    }
    g.adjacency.resize(leaves.size());

    // Each node is bucketed at its own level and the two coarser ones, so a query at level L
    // sees nodes of levels L..L+2 in the 7x7 block of level-L cells around it.
    int max_level = 0;
    for (const auto& l : leaves) max_level = std::max(max_level, l.level);
    std::vector<std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash>> buckets(
        static_cast<std::size_t>(max_level) + 1);
    auto key_at = [&](Point2 p, int level) {
        const double s = side / std::ldexp(1.0, level);
        return CellKey{static_cast<std::int64_t>(std::floor((p.x - origin.x) / s)),
                       static_cast<std::int64_t>(std::floor((p.y - origin.y) / s))};
    };
    for (std::size_t i = 0; i < leaves.size(); ++i)
        for (int lv = std::max(0, leaves[i].level - 2); lv <= leaves[i].level; ++lv)
            buckets[static_cast<std::size_t>(lv)][key_at(leaves[i].c, lv)].push_back(static_cast<std::uint32_t>(i));

    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const auto& li = leaves[i];
        const CellKey k = key_at(li.c, li.level);
        const auto& level_buckets = buckets[static_cast<std::size_t>(li.level)];
        for (std::int64_t dx = -3; dx <= 3; ++dx) {
            for (std::int64_t dy = -3; dy <= 3; ++dy) {
                const auto it = level_buckets.find({k.ix + dx, k.iy + dy});
                if (it == level_buckets.end()) continue;
                for (const auto j32 : it->second) {
                    const std::size_t j = j32;
                    const auto& lj = leaves[j];
                    // The coarser endpoint (or the lower index on ties) owns the pair.
                    if (lj.level < li.level || (lj.level == li.level && j <= i)) continue;
                    const double dist = distance(li.c, lj.c);
                    if (dist > kStencilRadius * li.size * (1.0 + 1e-12)) continue;
                    if (!domain.segment_in_domain(li.c, lj.c)) continue;
                    const double w = segment_qh_length_fast(domain, li.c, lj.c);
                    g.adjacency[i].push_back({j, w});
                    g.adjacency[j].push_back({i, w});
                }
            }
        }
    }
    return g;
}

QhGraph build_graph(const Domain& domain, const Box& region, double resolution) {
    GraphOptions o;
    o.resolution = resolution;
    auto g = build_graph(domain, region, o);
    const auto label = g.components();
    const std::size_t n_comp = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    if (n_comp > 1) {
        std::vector<std::size_t> sizes(n_comp, 0);
        for (const auto l : label) ++sizes[l];
        std::string msg = std::to_string(n_comp) + " components of sizes";
        for (const auto s : sizes) msg += " " + std::to_string(s);
        throw Error(ErrorKind::DisconnectedGraph, msg);
    }
    return g;
}

std::vector<std::size_t> dijkstra_path(const QhGraph& graph, std::size_t source, std::size_t target) {
    const std::size_t n = graph.nodes.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<double> dist(n, inf);
    std::vector<std::size_t> prev(n, none);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (v == target) break;
        for (const auto& e : graph.adjacency[v]) {
            const double nd = d + e.weight;
            if (nd < dist[e.to] || (nd == dist[e.to] && prev[e.to] != none && v < prev[e.to])) {
                dist[e.to] = nd;
                prev[e.to] = v;
                pq.push({nd, e.to});
            }
        }
    }
    if (dist[target] == inf) return {};
    std::vector<std::size_t> path;
    for (std::size_t v = target; v != none; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace qhg
