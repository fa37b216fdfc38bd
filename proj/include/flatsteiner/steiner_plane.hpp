#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "flatsteiner/mst.hpp"
#include "flatsteiner/topology.hpp"
#include "flatsteiner/tree.hpp"
#include "flatsteiner/vec2.hpp"

namespace flatsteiner {

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double best)
        : std::runtime_error(what), best_length(best) {}
    double best_length;
};

// Geometric median of three points (the Fermat point of the triangle): the
// vertex whose angle is >= 120 degrees if one exists, otherwise the interior
// point seeing all sides at 120 degrees (Torricelli construction).
inline Vec2 fermat_point(Vec2 a, Vec2 b, Vec2 c) {
    const double scale = std::max({dist(a, b), dist(b, c), dist(a, c)});
    if (scale == 0.0) return a;
    const Vec2 pts[3] = {a, b, c};
    // Coincident pair: the objective 2|y-p| + |y-q| is minimized at p.
    for (int i = 0; i < 3; ++i)
        if (dist(pts[i], pts[(i + 1) % 3]) < 1e-14 * scale) return pts[i];
    // Angle >= 120 degrees at a vertex (also covers collinear triples).
    for (int i = 0; i < 3; ++i) {
        const Vec2 u = pts[(i + 1) % 3] - pts[i], v = pts[(i + 2) % 3] - pts[i];
        if (dot(u, v) <= -0.5 * u.norm() * v.norm()) return pts[i];
    }
    // Torricelli: apex of the equilateral triangle on each side, away from
    // the opposite vertex; the lines vertex-to-apex meet at the Fermat point.
    const double sin60 = std::sqrt(3.0) / 2;
    auto apex = [&](Vec2 base1, Vec2 base2, Vec2 opposite) {
        const Vec2 d = base2 - base1;
        Vec2 e{base1.x + 0.5 * d.x - sin60 * d.y, base1.y + 0.5 * d.y + sin60 * d.x};
        if (cross(d, e - base1) * cross(d, opposite - base1) > 0)
            e = {base1.x + 0.5 * d.x + sin60 * d.y, base1.y + 0.5 * d.y - sin60 * d.x};
        return e;
    };
    const Vec2 ea = apex(b, c, a);
    const Vec2 eb = apex(a, c, b);
    // Intersection of lines (a, ea) and (b, eb).
    const Vec2 da = ea - a, db = eb - b;
    const double denom = cross(da, db);
    if (denom == 0.0) return (a + b + c) / 3.0;
    const double t = cross(b - a, db) / denom;
    return a + da * t;
}

struct FixedTopologyResult {
    std::vector<Vec2> steiner_points;
    double length = 0.0;
    bool converged = false;
    long iterations = 0;
};

namespace detail {

inline double topology_length(const Topology& topo, const std::vector<Vec2>& pos) {
    double total = 0.0;
    for (const auto& [u, v] : topo.edges) total += dist(pos[u], pos[v]);
    return total;
}

}  // namespace detail

// Minimizes total edge length over the Steiner vertex positions of a fixed
// full topology. The objective is convex; cyclic repositioning of each
// Steiner point to the Fermat point of its three neighbors converges to the
// optimum. Steiner points may degenerate onto terminals or each other; the
// length function stays valid there.
inline FixedTopologyResult optimize_fixed_topology(const std::vector<Vec2>& terminals,
                                                   const Topology& topo, double tol = 1e-10,
                                                   long iteration_cap = 100000) {
    const int n = topo.terminal_count;
    if (int(terminals.size()) != n)
        throw std::invalid_argument("terminal count does not match the topology");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    std::vector<std::array<int, 3>> neighbors(size_t(topo.steiner_count()), {-1, -1, -1});
    for (const auto& [u, v] : topo.edges) {
        auto attach = [&](int s, int other) {
            if (s < n) return;
            auto& nb = neighbors[size_t(s - n)];
            *std::find(nb.begin(), nb.end(), -1) = other;
        };
        attach(u, v);
        attach(v, u);
    }

    std::vector<Vec2> pos(size_t(topo.vertex_count()));
    for (int i = 0; i < n; ++i) pos[size_t(i)] = terminals[size_t(i)];
    Vec2 centroid{0, 0};
    for (const auto& t : terminals) centroid += t;
    centroid = centroid / double(n);
    for (int s = 0; s < topo.steiner_count(); ++s) pos[size_t(n + s)] = centroid;
    for (int warm = 0; warm < 2 * n; ++warm)
        for (int s = 0; s < topo.steiner_count(); ++s) {
            const auto& nb = neighbors[size_t(s)];
            pos[size_t(n + s)] = (pos[size_t(nb[0])] + pos[size_t(nb[1])] + pos[size_t(nb[2])]) / 3.0;
        }

    FixedTopologyResult result;
    double prev = detail::topology_length(topo, pos);
    for (long iter = 0; iter < iteration_cap; ++iter) {
        for (int s = 0; s < topo.steiner_count(); ++s) {
            const auto& nb = neighbors[size_t(s)];
            pos[size_t(n + s)] =
                fermat_point(pos[size_t(nb[0])], pos[size_t(nb[1])], pos[size_t(nb[2])]);
        }
        const double length = detail::topology_length(topo, pos);
        result.iterations = iter + 1;
        if (std::abs(prev - length) < tol) {
            result.converged = true;
            prev = length;
            break;
        }
        prev = length;
    }
    result.length = prev;
    result.steiner_points.assign(pos.begin() + n, pos.end());
    return result;
}

namespace detail {

constexpr double kMergeEps = 1e-8;

// Builds the output tree from an optimized topology, contracting edges
// shorter than kMergeEps so degenerate Steiner points collapse onto their
// neighbors. Terminal-terminal edges never contract.
inline Tree build_plane_tree(const std::vector<Vec2>& terminals, const Topology& topo,
                             const std::vector<Vec2>& steiner) {
    const int n = topo.terminal_count;
    const int total = topo.vertex_count();
    std::vector<Vec2> pos(static_cast<size_t>(total));
    for (int i = 0; i < n; ++i) pos[size_t(i)] = terminals[size_t(i)];
    for (int s = 0; s < topo.steiner_count(); ++s) pos[size_t(n + s)] = steiner[size_t(s)];

    // Union-find; terminals always win cluster representation.
    std::vector<int> rep(static_cast<size_t>(total));
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](int x) {
        while (rep[size_t(x)] != x) x = rep[size_t(x)] = rep[size_t(rep[size_t(x)])];
        return x;
    };
    for (const auto& [u, v] : topo.edges) {
        if (u < n && v < n) continue;
        if (dist(pos[size_t(u)], pos[size_t(v)]) >= kMergeEps) continue;
        const int ru = find(u), rv = find(v);
        if (ru == rv) continue;
        if (rv < ru)  // keep the smaller id (terminals in particular)
            rep[size_t(ru)] = rv;
        else
            rep[size_t(rv)] = ru;
    }

    Tree tree;
    std::vector<int> out_index(size_t(total), -1);
    for (int v = 0; v < total; ++v) {
        if (find(v) != v) continue;
        out_index[size_t(v)] = int(tree.vertices.size());
        tree.vertices.push_back({SurfacePoint::plane(pos[size_t(v)].x, pos[size_t(v)].y),
                                 v < n ? VertexRole::Terminal : VertexRole::Steiner});
        tree.plane_lift.push_back(pos[size_t(v)]);
    }
    for (const auto& [u, v] : topo.edges) {
        const int ru = find(u), rv = find(v);
        if (ru == rv) continue;
        const int a = out_index[size_t(ru)], b = out_index[size_t(rv)];
        tree.edges.emplace_back(std::min(a, b), std::max(a, b));
        const double len = dist(pos[size_t(ru)], pos[size_t(rv)]);
        tree.edge_lengths.push_back(len);
        tree.total_length += len;
    }
    return tree;
}

inline std::vector<Vec2> plane_terminals(const std::vector<SurfacePoint>& points) {
    const auto canon =
        canonical_distinct_points(Space::plane(), points, 2);
    std::vector<Vec2> out;
    out.reserve(canon.size());
    for (const auto& p : canon) out.push_back({p.x(), p.y()});
    return out;
}

}  // namespace detail

// Steiner minimal tree in the Euclidean plane: minimum over all full
// topologies of the fixed-topology optimum. Supports 2 <= n <= 7.
inline Tree smt_plane(const std::vector<SurfacePoint>& points, double tol = 1e-10) {
    const auto terminals = detail::plane_terminals(points);
    const int n = int(terminals.size());
    if (n > 7) throw std::invalid_argument("smt_plane supports at most 7 terminals");

    if (n == 2) {
        Tree tree;
        tree.vertices = {{SurfacePoint::plane(terminals[0].x, terminals[0].y), VertexRole::Terminal},
                         {SurfacePoint::plane(terminals[1].x, terminals[1].y), VertexRole::Terminal}};
        tree.plane_lift = {terminals[0], terminals[1]};
        tree.edges = {{0, 1}};
        tree.edge_lengths = {dist(terminals[0], terminals[1])};
        tree.total_length = tree.edge_lengths[0];
        return tree;
    }

    const auto topologies = enumerate_full_topologies(n);
    double best_length = std::numeric_limits<double>::infinity();
    const Topology* best_topo = nullptr;
    std::vector<Vec2> best_steiner;
    for (const auto& topo : topologies) {
        auto result = optimize_fixed_topology(terminals, topo, tol);
        if (!result.converged)
            throw ConvergenceError("fixed-topology optimization hit the iteration cap",
                                   result.length);
        if (result.length < best_length) {
            best_length = result.length;
            best_topo = &topo;
            best_steiner = std::move(result.steiner_points);
        }
    }
    return detail::build_plane_tree(terminals, *best_topo, best_steiner);
}

inline double smt_plane_length(const std::vector<SurfacePoint>& points, double tol = 1e-10) {
    return smt_plane(points, tol).total_length;
}

// Convenience overload on raw plane coordinates.
inline Tree smt_plane(const std::vector<Vec2>& points, double tol = 1e-10) {
    std::vector<SurfacePoint> sp;
    sp.reserve(points.size());
    for (const auto& p : points) sp.push_back(SurfacePoint::plane(p.x, p.y));
    return smt_plane(sp, tol);
}

}  // namespace flatsteiner
