#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "flatsteiner/mst.hpp"
#include "flatsteiner/rng.hpp"
#include "flatsteiner/space.hpp"

namespace flatsteiner {

// A locally isometric branched covering of the plane onto one of the
// supported quotients:
//
//   plane -> cone(2*pi/k)   quotient by rotations about the origin;
//                           singular point/value: origin / apex.
//   plane -> disphenoid     quotient by the triangle-tiling group of
//                           DisphenoidGeometry; singular points are the
//                           half-turn centers, singular values the four
//                           tetrahedron vertices.
//
// Away from the singular sets the projection is a local isometry, so it
// preserves curve lengths and does not increase distances; verify_covering
// probes both facts numerically.
class CoveringMap {
public:
    static CoveringMap cone(int k) { return CoveringMap(Space::cone_sheets(k)); }

    static CoveringMap disphenoid(double a, double b, double c) {
        return CoveringMap(Space::disphenoid(a, b, c));
    }

    static CoveringMap over(const Space& base) {
        if (base.kind() == SpaceKind::Cone && !base.cover_sheets())
            throw std::invalid_argument(
                "no plane covering for a cone whose angle is not 2*pi/k");
        if (base.kind() == SpaceKind::Plane) return CoveringMap(Space::cone_sheets(1));
        return CoveringMap(base);
    }

    const Space& base() const { return base_; }

    // k for cones; 0 means infinitely many sheets (lattice-indexed).
    int sheet_count() const {
        return base_.kind() == SpaceKind::Cone ? *base_.cover_sheets() : 0;
    }

    SurfacePoint project(Vec2 p) const {
        if (base_.kind() == SpaceKind::Cone) {
            const double r = p.norm();
            if (r == 0.0) return SurfacePoint::cone(0.0, 0.0);
            double phi = std::atan2(p.y, p.x);
            if (phi < 0.0) phi += 2.0 * std::numbers::pi;
            return base_.canonical(SurfacePoint::cone(r, phi));
        }
        const auto cp = base_.geometry().fold(p);
        return SurfacePoint::disphenoid(cp.face, cp.u, cp.v, cp.w);
    }

    // All pre-images of x within `radius` of the plane origin. Cones have at
    // most k (one for the apex); the disphenoid has one per deck image in the
    // ball, so the list is empty when the radius is too small — callers grow
    // the radius as needed.
    std::vector<Vec2> lifts(const SurfacePoint& x, double radius) const {
        const SurfacePoint c = base_.canonical(x);
        std::vector<Vec2> out;
        if (base_.kind() == SpaceKind::Cone) {
            const int k = *base_.cover_sheets();
            if (c.r() == 0.0) {
                if (radius >= 0.0) out.push_back({0.0, 0.0});
                return out;
            }
            if (c.r() > radius) return out;
            const double theta = base_.total_angle();
            out.reserve(k);
            for (int j = 0; j < k; ++j) out.push_back(from_polar(c.r(), c.phi() + j * theta));
            return out;
        }
        const Vec2 rep = base_.chart_position(c);
        base_.geometry().for_each_deck_image(rep, radius,
                                             [&](const DeckElement&, Vec2 img) { out.push_back(img); });
        // Deck images of a singular point coincide in pairs; deduplicate.
        std::sort(out.begin(), out.end(), [](Vec2 u, Vec2 v) {
            return u.x != v.x ? u.x < v.x : u.y < v.y;
        });
        const double eps = 1e-9;
        std::vector<Vec2> dedup;
        for (const Vec2& p : out) {
            bool dup = false;
            for (auto it = dedup.rbegin(); it != dedup.rend() && p.x - it->x <= eps; ++it)
                if (dist(p, *it) <= eps) { dup = true; break; }
            if (!dup) dedup.push_back(p);
        }
        return dedup;
    }

    std::vector<SurfacePoint> singular_values() const {
        if (base_.kind() == SpaceKind::Cone) return {SurfacePoint::cone(0.0, 0.0)};
        return {SurfacePoint::disphenoid(1, 1, 0, 0), SurfacePoint::disphenoid(0, 1, 0, 0),
                SurfacePoint::disphenoid(0, 0, 1, 0), SurfacePoint::disphenoid(0, 0, 0, 1)};
    }

    // The pre-images of the singular values within `radius` of the origin:
    // the origin for cones, the half-turn centers of the tiling for the
    // disphenoid.
    std::vector<Vec2> singular_points(double radius) const {
        std::vector<Vec2> out;
        for (const auto& value : singular_values())
            for (const auto& lift : lifts(value, radius)) out.push_back(lift);
        return out;
    }

    bool is_singular_value(const SurfacePoint& x) const {
        const Vec2 pos = base_.chart_position(base_.canonical(x));
        for (const auto& s : singular_values())
            if (dist(pos, base_.chart_position(s)) <= 1e-9 *
                    (base_.kind() == SpaceKind::Cone ? 1.0 : base_.geometry().diameter_bound()))
                return true;
        return false;
    }

    // Distance from a plane point to the singular set upstairs.
    double distance_to_singular_points(Vec2 p) const {
        if (base_.kind() == SpaceKind::Cone) return p.norm();
        return base_.geometry().distance_to_singular_set(p);
    }

    double base_distance(const SurfacePoint& x, const SurfacePoint& y) const {
        return base_.distance(x, y);
    }

    // Deck transformations with parameter norm within `radius`
    // (all k rotations for cones regardless of radius).
    std::vector<DeckElement> sample_deck_elements(double radius) const {
        std::vector<DeckElement> out;
        if (base_.kind() == SpaceKind::Cone) {
            const int k = *base_.cover_sheets();
            for (int j = 0; j < k; ++j) out.push_back(DeckElement::cone_rotation(j, k));
            return out;
        }
        base_.geometry().for_each_deck_image(
            {0.0, 0.0}, radius, [&](const DeckElement& g, Vec2) { out.push_back(g); });
        return out;
    }

private:
    explicit CoveringMap(Space base) : base_(std::move(base)) {}
    Space base_;
};

// ---------------------------------------------------------------------------
// verify_covering
// ---------------------------------------------------------------------------

struct PropertyCheck {
    double max_violation = 0.0;   // most positive excess seen (0 if none)
    int violations = 0;           // samples beyond tolerance
    double tolerance = 0.0;
    std::vector<Vec2> witness;    // plane points realizing max_violation
};

struct CoveringReport {
    int samples = 0;
    std::uint64_t seed = 0;
    PropertyCheck nonexpansive;        // d_base(f p, f q) <= d_plane(p, q)
    PropertyCheck length_preservation; // projected polyline length == plane length
    PropertyCheck mst_monotone;        // mst_base(f M) <= mst_plane(M)
    bool passed = false;
};

namespace detail {

inline Vec2 annulus_point(Rng& rng) {
    // Uniform polar in 0.1 <= r <= 10: probes small radii without piling
    // samples onto the singular set.
    return from_polar(rng.uniform(0.1, 10.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

inline void record(PropertyCheck& check, double violation, const std::vector<Vec2>& pts) {
    if (violation > check.max_violation) {
        check.max_violation = violation;
        check.witness = pts;
    }
    if (violation > check.tolerance) ++check.violations;
}

}  // namespace detail

// Samples the three covering properties the construction relies on:
// nonexpansiveness of the projection, length preservation for projected
// polylines, and monotonicity of mst under projection.
inline CoveringReport verify_covering(const CoveringMap& cover, int samples,
                                      std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("verify_covering: samples must be >= 1");
    CoveringReport report;
    report.samples = samples;
    report.seed = seed;
    report.nonexpansive.tolerance = 1e-12;
    report.length_preservation.tolerance = 1e-12;
    report.mst_monotone.tolerance = 1e-9;

    const bool disphenoid = cover.base().kind() == SpaceKind::Disphenoid;
    // Polyline steps stay comparable to the singular-set spacing so that
    // clearance rejection terminates quickly. The subdivision spacing keeps
    // consecutive samples inside a normal neighborhood: closer to each other
    // than to any other lift of the same fiber.
    const double scale =
        disphenoid ? std::min({cover.base().geometry().side_a(), cover.base().geometry().side_b(),
                               cover.base().geometry().side_c()})
                   : 1.0;
    const double clearance = 0.05 * scale;
    double spacing = 0.04 * scale;
    if (!disphenoid && cover.sheet_count() > 1)
        spacing = std::min(spacing,
                           0.9 * clearance * std::sin(std::numbers::pi / cover.sheet_count()));

    const Rng master(seed);
    for (int i = 0; i < samples; ++i) {
        Rng rng = master.fork(std::uint64_t(i));

        // (i) nonexpansiveness on a random pair
        {
            const Vec2 p = detail::annulus_point(rng);
            const Vec2 q = detail::annulus_point(rng);
            const double up = dist(p, q);
            const double down = cover.base_distance(cover.project(p), cover.project(q));
            detail::record(report.nonexpansive, down - up, {p, q});
        }

        // (ii) length preservation on a 2-segment polyline kept clear of the
        // singular set (the projection is a local isometry away from it)
        {
            std::vector<Vec2> poly;
            for (int attempt = 0; attempt < 400 && poly.empty(); ++attempt) {
                std::vector<Vec2> cand{detail::annulus_point(rng)};
                for (int s = 0; s < 2; ++s) {
                    const double len = rng.uniform(0.3, 1.0) * scale;
                    cand.push_back(cand.back() +
                                   from_polar(len, rng.uniform(0.0, 2.0 * std::numbers::pi)));
                }
                bool clear = true;
                for (size_t s = 0; s + 1 < cand.size() && clear; ++s) {
                    const int sub = int(std::ceil(dist(cand[s], cand[s + 1]) / spacing));
                    for (int t = 0; t <= sub && clear; ++t) {
                        const Vec2 x = cand[s] + (cand[s + 1] - cand[s]) * (double(t) / sub);
                        clear = cover.distance_to_singular_points(x) >= clearance;
                    }
                }
                if (clear) poly = std::move(cand);
            }
            if (!poly.empty()) {
                long double plane_len = 0.0L, proj_len = 0.0L;
                for (size_t s = 0; s + 1 < poly.size(); ++s) {
                    const int sub = std::max(1, int(std::ceil(dist(poly[s], poly[s + 1]) / spacing)));
                    SurfacePoint prev = cover.project(poly[s]);
                    Vec2 prev_plane = poly[s];
                    for (int t = 1; t <= sub; ++t) {
                        const Vec2 x = poly[s] + (poly[s + 1] - poly[s]) * (double(t) / sub);
                        const SurfacePoint fx = cover.project(x);
                        plane_len += dist(prev_plane, x);
                        proj_len += cover.base_distance(prev, fx);
                        prev = fx;
                        prev_plane = x;
                    }
                }
                detail::record(report.length_preservation,
                               std::abs(double(proj_len - plane_len)), poly);
            }
        }

        // (iii) mst monotonicity under projection
        {
            const int m = 3 + int(rng.below(4));
            std::vector<Vec2> pts;
            std::vector<SurfacePoint> plane_pts, base_pts;
            for (int s = 0; s < m; ++s) {
                const Vec2 p = detail::annulus_point(rng);
                pts.push_back(p);
                plane_pts.push_back(SurfacePoint::plane(p.x, p.y));
                base_pts.push_back(cover.project(p));
            }
            const double up = mst_length(Space::plane(), plane_pts);
            const double down = mst_length(cover.base(), base_pts);
            detail::record(report.mst_monotone, down - up, pts);
        }
    }

    report.passed = report.nonexpansive.violations == 0 &&
                    report.length_preservation.violations == 0 &&
                    report.mst_monotone.violations == 0;
    return report;
}

}  // namespace flatsteiner
