#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "flatsteiner/covering.hpp"
#include "flatsteiner/mst.hpp"
#include "flatsteiner/steiner_plane.hpp"

namespace flatsteiner {

// A choice of lift for each terminal. Deck transformations act transitively
// on sheets, so the first terminal is pinned (for cones, the first terminal
// off the apex) and the rest are enumerated.
struct SheetAssignment {
    std::vector<DeckElement> deck;  // per-terminal deck element
    std::vector<Vec2> lifted;       // resulting plane configuration
};

struct QuotientSmtResult {
    Tree tree;                 // projected tree on the base space
    Tree plane_tree;           // the realizing plane lift
    SheetAssignment best;      // assignment attaining the minimum
    long assignments_tried = 0;
};

namespace detail {

constexpr long kAssignmentCap = 10000;

struct LiftCandidates {
    std::vector<DeckElement> deck;
    std::vector<Vec2> positions;
};

// smt length only, reusing a cached topology list; the n=3 case reduces to
// the closed-form Fermat point.
inline double smt_plane_length_fast(const std::vector<Vec2>& pts,
                                    const std::vector<Topology>& topologies, double tol) {
    if (pts.size() == 2) return dist(pts[0], pts[1]);
    if (pts.size() == 3) {
        const Vec2 f = fermat_point(pts[0], pts[1], pts[2]);
        return dist(f, pts[0]) + dist(f, pts[1]) + dist(f, pts[2]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& topo : topologies) {
        const auto result = optimize_fixed_topology(pts, topo, tol);
        if (!result.converged)
            throw ConvergenceError("fixed-topology optimization hit the iteration cap",
                                   result.length);
        best = std::min(best, result.length);
    }
    return best;
}

}  // namespace detail

// Upper bound on smt for any cone: the star of geodesic spokes from the apex
// to every terminal, of total length sum(r_i). Valid for every total angle,
// including those above 2*pi where no plane covering exists.
inline double smt_upper_star(const Space& space, const std::vector<SurfacePoint>& terminals) {
    if (space.kind() != SpaceKind::Cone)
        throw std::invalid_argument("smt_upper_star expects a cone");
    double total = 0.0;
    for (const auto& p : terminals) total += space.canonical(p).r();
    return total;
}

// Steiner minimal tree on a cone of angle 2*pi/k or on a disphenoid, by the
// covering construction: minimize smt over the plane lifts of the terminal
// configuration, then project the optimal plane tree back down. Projection
// preserves the tree's length, so the projected tree realizes the same
// minimum on the base.
inline QuotientSmtResult smt_quotient_detailed(const Space& space,
                                               const std::vector<SurfacePoint>& terminals,
                                               double tol = 1e-10) {
    if (space.kind() == SpaceKind::Plane)
        throw std::invalid_argument("smt_quotient expects a cone or disphenoid; use smt_plane");
    if (space.kind() == SpaceKind::Cone && !space.cover_sheets())
        throw std::invalid_argument(
            "cone angle is not 2*pi/k, so no plane covering exists; smt_upper_star provides "
            "a certified upper bound instead");
    const auto canon = detail::canonical_distinct_points(space, terminals, 2);
    const int n = int(canon.size());
    if (n > 5) throw std::invalid_argument("smt_quotient supports at most 5 terminals");

    const CoveringMap cover = CoveringMap::over(space);

    // Candidate lifts per terminal.
    std::vector<detail::LiftCandidates> candidates(static_cast<size_t>(n));
    if (space.kind() == SpaceKind::Cone) {
        const int k = *space.cover_sheets();
        const double theta = space.total_angle();
        int pin = -1;  // first terminal off the apex
        for (int i = 0; i < n && pin < 0; ++i)
            if (canon[size_t(i)].r() > 0.0) pin = i;
        for (int i = 0; i < n; ++i) {
            auto& cand = candidates[size_t(i)];
            const auto& p = canon[size_t(i)];
            if (p.r() == 0.0) {  // apex lifts only to the origin
                cand.deck.push_back(DeckElement::identity());
                cand.positions.push_back({0.0, 0.0});
                continue;
            }
            const int sheets = (i == pin) ? 1 : k;
            for (int j = 0; j < sheets; ++j) {
                cand.deck.push_back(DeckElement::cone_rotation(j, k));
                cand.positions.push_back(from_polar(p.r(), p.phi() + j * theta));
            }
        }
    } else {
        const auto& geom = space.geometry();
        // Every lifted terminal of an optimal configuration lies within tree
        // distance smt <= mst of the pinned lift, so a ball of that radius
        // around it captures all useful candidates. The translation norms
        // stay within mst + max terminal norm.
        const double mst_upper = mst_length(space, canon);
        const Vec2 pin = space.chart_position(canon[0]);
        const double radius = mst_upper + 1e-9;
        for (int i = 0; i < n; ++i) {
            auto& cand = candidates[size_t(i)];
            const Vec2 rep = space.chart_position(canon[size_t(i)]);
            if (i == 0) {  // pinned to the canonical representative
                cand.deck.push_back(DeckElement::identity());
                cand.positions.push_back(rep);
                continue;
            }
            geom.for_each_deck_image_near(rep, pin, radius,
                                          [&](const DeckElement& g, Vec2 img) {
                // Deck images of a singular point coincide in pairs.
                for (const auto& seen : cand.positions)
                    if (dist(seen, img) <= 1e-9) return;
                cand.deck.push_back(g);
                cand.positions.push_back(img);
            });
        }
    }

    long total_assignments = 1;
    for (const auto& cand : candidates) {
        total_assignments *= long(cand.positions.size());
        if (total_assignments > detail::kAssignmentCap)
            throw std::runtime_error("sheet-assignment enumeration exceeds the 10^4 cap");
    }

    const auto topologies = n >= 3 ? enumerate_full_topologies(n) : std::vector<Topology>{};

    // Enumerate the product, odometer-style; assignment index increases
    // lexicographically so ties resolve to the lowest index.
    std::vector<size_t> odo(size_t(n), 0);
    std::vector<Vec2> lifted(static_cast<size_t>(n));
    double best_length = std::numeric_limits<double>::infinity();
    SheetAssignment best;
    long tried = 0;
    while (true) {
        for (int i = 0; i < n; ++i) lifted[size_t(i)] = candidates[size_t(i)].positions[odo[size_t(i)]];
        ++tried;

        // A spanning tree contains a path between the farthest pair, so
        // smt >= max pairwise distance; skip hopeless assignments.
        double diameter = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                diameter = std::max(diameter, dist(lifted[size_t(i)], lifted[size_t(j)]));
        if (diameter < best_length) {
            const double length = detail::smt_plane_length_fast(lifted, topologies, tol);
            if (length < best_length) {
                best_length = length;
                best.lifted = lifted;
                best.deck.clear();
                for (int i = 0; i < n; ++i)
                    best.deck.push_back(candidates[size_t(i)].deck[odo[size_t(i)]]);
            }
        }

        int pos = n - 1;
        while (pos >= 0 && ++odo[size_t(pos)] == candidates[size_t(pos)].positions.size())
            odo[size_t(pos--)] = 0;
        if (pos < 0) break;
    }

    QuotientSmtResult result;
    result.assignments_tried = tried;
    result.best = best;
    result.plane_tree = smt_plane(best.lifted, tol);

    // Project the plane tree down; edge geodesics keep their length.
    Tree projected;
    projected.edges = result.plane_tree.edges;
    projected.edge_lengths = result.plane_tree.edge_lengths;
    projected.total_length = result.plane_tree.total_length;
    projected.plane_lift = result.plane_tree.plane_lift;
    int terminal_seen = 0;
    for (size_t v = 0; v < result.plane_tree.vertices.size(); ++v) {
        const auto& vert = result.plane_tree.vertices[v];
        if (vert.role == VertexRole::Terminal) {
            projected.vertices.push_back({canon[size_t(terminal_seen++)], VertexRole::Terminal});
        } else {
            projected.vertices.push_back(
                {cover.project(result.plane_tree.plane_lift[v]), VertexRole::Steiner});
        }
    }
    result.tree = projected;
    return result;
}

inline Tree smt_quotient(const Space& space, const std::vector<SurfacePoint>& terminals,
                         double tol = 1e-10) {
    return smt_quotient_detailed(space, terminals, tol).tree;
}

inline double smt_quotient_length(const Space& space,
                                  const std::vector<SurfacePoint>& terminals,
                                  double tol = 1e-10) {
    return smt_quotient(space, terminals, tol).total_length;
}

}  // namespace flatsteiner
