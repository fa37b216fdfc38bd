#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "flatsteiner/disphenoid.hpp"
#include "flatsteiner/vec2.hpp"

namespace flatsteiner {

enum class SpaceKind { Plane, Cone, Disphenoid };

// A point in the chart appropriate to its space:
//   Plane       (x, y)          Cartesian
//   Cone        (r, phi)        r >= 0, phi in [0, total_angle); r = 0 is the apex
//   Disphenoid  face + (u,v,w)  barycentric on one of the four faces
struct SurfacePoint {
    SpaceKind kind = SpaceKind::Plane;
    int face = 0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    static SurfacePoint plane(double x, double y) {
        return {SpaceKind::Plane, 0, x, y, 0.0};
    }
    static SurfacePoint cone(double r, double phi) {
        return {SpaceKind::Cone, 0, r, phi, 0.0};
    }
    static SurfacePoint disphenoid(int face, double u, double v, double w) {
        return {SpaceKind::Disphenoid, face, u, v, w};
    }

    double x() const { return c0; }
    double y() const { return c1; }
    double r() const { return c0; }
    double phi() const { return c1; }

    bool operator==(const SurfacePoint&) const = default;
};

// One of the three intrinsic flat spaces: the Euclidean plane, a flat cone of
// given total angle at its apex (any positive angle; angles above 2*pi are
// the polyhedral-vertex case), or the surface of an isosceles tetrahedron.
// Immutable value; all operations are pure.
class Space {
public:
    static Space plane() { return Space(SpaceKind::Plane, 0.0, {}, nullptr); }

    static Space cone(double total_angle) {
        if (!(total_angle > 0.0) || !std::isfinite(total_angle))
            throw std::invalid_argument("cone: total angle must be positive and finite");
        return Space(SpaceKind::Cone, total_angle, {}, nullptr);
    }

    // Cone with total angle exactly 2*pi/k. Declaring the integer k keeps the
    // plane covering available (a floating-point angle cannot reliably be
    // recognized as 2*pi/k).
    static Space cone_sheets(int k) {
        if (k < 1) throw std::invalid_argument("cone: sheet count must be >= 1");
        Space s(SpaceKind::Cone, 2.0 * std::numbers::pi / double(k), k, nullptr);
        return s;
    }

    static Space disphenoid(double a, double b, double c) {
        auto geom = std::make_shared<const DisphenoidGeometry>(a, b, c);
        return Space(SpaceKind::Disphenoid, 0.0, {}, std::move(geom));
    }

    SpaceKind kind() const { return kind_; }
    double total_angle() const { return total_angle_; }
    std::optional<int> cover_sheets() const { return sheets_; }
    const DisphenoidGeometry& geometry() const { return *geom_; }

    // Normalizes a point into its canonical representation and validates it:
    // cone angles reduced into [0, theta) (values within 1e-12 of theta snap
    // to 0), the apex is (0, 0); disphenoid points are folded so that shared
    // edges and vertices get the lowest-face-index representative.
    SurfacePoint canonical(const SurfacePoint& p) const {
        if (p.kind != kind_)
            throw std::invalid_argument("point chart does not match the space");
        switch (kind_) {
            case SpaceKind::Plane: {
                if (!std::isfinite(p.c0) || !std::isfinite(p.c1))
                    throw std::invalid_argument("plane point must be finite");
                return p;
            }
            case SpaceKind::Cone: {
                if (!(p.r() >= 0.0) || !std::isfinite(p.r()) || !std::isfinite(p.phi()))
                    throw std::invalid_argument("cone point needs finite r >= 0");
                if (p.r() == 0.0) return SurfacePoint::cone(0.0, 0.0);
                double phi = std::fmod(p.phi(), total_angle_);
                if (phi < 0.0) phi += total_angle_;
                if (phi >= total_angle_ - std::min(1e-12, 0.5 * total_angle_)) phi = 0.0;
                return SurfacePoint::cone(p.r(), phi);
            }
            case SpaceKind::Disphenoid: {
                if (p.face < 0 || p.face > 3)
                    throw std::invalid_argument("disphenoid face index must be in 0..3");
                const double sum = p.c0 + p.c1 + p.c2;
                if (!std::isfinite(sum) || std::abs(sum - 1.0) > 1e-9 ||
                    p.c0 < -1e-12 || p.c1 < -1e-12 || p.c2 < -1e-12)
                    throw std::invalid_argument(
                        "disphenoid barycentric coordinates must be nonnegative and sum to 1");
                const Vec2 rep = geom_->chart_to_plane(p.face, p.c0 / sum, p.c1 / sum, p.c2 / sum);
                const auto cp = geom_->fold(rep);
                return SurfacePoint::disphenoid(cp.face, cp.u, cp.v, cp.w);
            }
        }
        throw std::logic_error("unreachable");
    }

    // Plane position of the canonical fundamental-domain representative
    // (disphenoid), or the Cartesian image of the polar chart (cone/plane).
    Vec2 chart_position(const SurfacePoint& p) const {
        switch (kind_) {
            case SpaceKind::Plane: return {p.x(), p.y()};
            case SpaceKind::Cone: return from_polar(p.r(), p.phi());
            case SpaceKind::Disphenoid:
                return geom_->chart_to_plane(p.face, p.c0, p.c1, p.c2);
        }
        throw std::logic_error("unreachable");
    }

    // Intrinsic geodesic distance.
    double distance(const SurfacePoint& pa, const SurfacePoint& pb) const {
        const SurfacePoint a = canonical(pa), b = canonical(pb);
        switch (kind_) {
            case SpaceKind::Plane:
                return std::hypot(a.x() - b.x(), a.y() - b.y());
            case SpaceKind::Cone: {
                const double dphi0 = std::abs(a.phi() - b.phi());
                const double dphi = std::min(dphi0, total_angle_ - dphi0);
                if (dphi < std::numbers::pi)
                    return law_of_cosines(a.r(), b.r(), dphi);
                return a.r() + b.r();  // geodesic through the apex
            }
            case SpaceKind::Disphenoid:
                return geom_->distance_between_reps(chart_position(a), chart_position(b));
        }
        throw std::logic_error("unreachable");
    }

    bool operator==(const Space& o) const {
        if (kind_ != o.kind_) return false;
        switch (kind_) {
            case SpaceKind::Plane: return true;
            case SpaceKind::Cone:
                return total_angle_ == o.total_angle_ && sheets_ == o.sheets_;
            case SpaceKind::Disphenoid:
                return geom_->side_a() == o.geom_->side_a() &&
                       geom_->side_b() == o.geom_->side_b() &&
                       geom_->side_c() == o.geom_->side_c();
        }
        return false;
    }

private:
    Space(SpaceKind kind, double total_angle, std::optional<int> sheets,
          std::shared_ptr<const DisphenoidGeometry> geom)
        : kind_(kind), total_angle_(total_angle), sheets_(sheets), geom_(std::move(geom)) {}

    // Law of cosines in the cancellation-free half-angle form; exact for
    // nearby points at large radii where the textbook form loses digits.
    static double law_of_cosines(double r1, double r2, double dphi) {
        const double s = std::sin(0.5 * dphi);
        const double dr = r1 - r2;
        return std::sqrt(dr * dr + 4.0 * r1 * r2 * s * s);
    }

    SpaceKind kind_;
    double total_angle_;
    std::optional<int> sheets_;
    std::shared_ptr<const DisphenoidGeometry> geom_;
};

inline double distance(const Space& space, const SurfacePoint& a, const SurfacePoint& b) {
    return space.distance(a, b);
}

inline std::string to_string(SpaceKind k) {
    switch (k) {
        case SpaceKind::Plane: return "plane";
        case SpaceKind::Cone: return "cone";
        case SpaceKind::Disphenoid: return "disphenoid";
    }
    return "?";
}

}  // namespace flatsteiner
