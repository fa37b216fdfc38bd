#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "flatsteiner/vec2.hpp"

namespace flatsteiner {

// A plane isometry of the form z -> sign*R(z) + v with sign in {+1,-1} and R
// a rotation about the origin. Covers both deck groups used here: rotations
// by 2*pi*j/k for the cone coverings, and the lattice translations /
// half-turns of the disphenoid tiling (sign = -1 encodes the half-turn, i.e.
// rotation by pi).
struct DeckElement {
    double sign = 1.0;       // +1 or -1
    double cos_t = 1.0;      // rotation part (identity unless a cone rotation)
    double sin_t = 0.0;
    Vec2 translation{0.0, 0.0};

    Vec2 apply(Vec2 z) const {
        const Vec2 r{cos_t * z.x - sin_t * z.y, sin_t * z.x + cos_t * z.y};
        return sign * r + translation;
    }

    static DeckElement identity() { return {}; }

    static DeckElement cone_rotation(int j, int k) {
        const double t = 2.0 * std::numbers::pi * double(j) / double(k);
        return {1.0, std::cos(t), std::sin(t), {0.0, 0.0}};
    }

    static DeckElement lattice_translation(Vec2 v) {
        return {1.0, 1.0, 0.0, v};
    }

    // z -> 2*center - z.
    static DeckElement half_turn(Vec2 center) {
        return {-1.0, 1.0, 0.0, 2.0 * center};
    }
};

// Surface of an isosceles tetrahedron (disphenoid) with face side lengths
// (a, b, c), developed onto the Euclidean plane.
//
// The development: place the doubled triangle A, B, C with |BC| = 2a,
// |CA| = 2b, |AB| = 2c. Gluing its boundary by the half-turns about the
// three edge midpoints folds it onto the tetrahedron surface; the four
// medial sub-triangles become the four faces. The induced tiling group is
//
//     G = { z -> z + lambda }  union  { z -> t - z },
//     lambda in Lambda = Z*(B-A) + Z*(C-A),   t in (A+B) + Lambda,
//
// and the plane -> surface folding map is a locally isometric branched
// covering whose singular values are the four tetrahedron vertices (cone
// points of total angle pi). Such a tetrahedron exists iff the face
// triangle is acute, which is exactly when all three of
// a^2+b^2-c^2, b^2+c^2-a^2, c^2+a^2-b^2 are positive.
//
// Face charts (barycentric, with the plane positions of the ordered vertex
// triples):
//   face 0: (Ma, Mb, Mc)   central face; Ma etc. are edge midpoints of ABC
//   face 1: (A,  Mc, Mb)   corner at A
//   face 2: (Mc, B,  Ma)   corner at B
//   face 3: (Mb, Ma, C)    corner at C
// The tetrahedron vertices on the surface are Ma, Mb, Mc and the common
// image of {A, B, C}.
class DisphenoidGeometry {
public:
    DisphenoidGeometry(double a, double b, double c) : a_(a), b_(b), c_(c) {
        if (!(a > 0 && b > 0 && c > 0))
            throw std::invalid_argument("disphenoid: face sides must be positive");
        if (!(a + b > c && b + c > a && c + a > b))
            throw std::invalid_argument("disphenoid: face sides violate the triangle inequality");
        if (!(a * a + b * b > c * c && b * b + c * c > a * a && c * c + a * a > b * b))
            throw std::invalid_argument("disphenoid: face triangle must be acute");

        A_ = {0.0, 0.0};
        B_ = {2.0 * c, 0.0};
        const double cx = (b * b + c * c - a * a) / c;  // from |AC|=2b, |BC|=2a
        C_ = {cx, std::sqrt(4.0 * b * b - cx * cx)};
        e1_ = B_ - A_;
        e2_ = C_ - A_;
        inv_det_ = 1.0 / cross(e1_, e2_);

        const Vec2 ma = 0.5 * (B_ + C_);
        const Vec2 mb = 0.5 * (A_ + C_);
        const Vec2 mc = 0.5 * (A_ + B_);
        faces_[0] = {ma, mb, mc};
        faces_[1] = {A_, mc, mb};
        faces_[2] = {mc, B_, ma};
        faces_[3] = {mb, ma, C_};

        // Index bounds for lattice enumeration: |i*e1 + j*e2| >= |i|*h1,
        // h1 = distance from e1 to the line spanned by e2 (and symmetrically).
        h1_ = std::abs(cross(e1_, e2_)) / e2_.norm();
        h2_ = std::abs(cross(e1_, e2_)) / e1_.norm();
    }

    double side_a() const { return a_; }
    double side_b() const { return b_; }
    double side_c() const { return c_; }
    Vec2 lattice_e1() const { return e1_; }
    Vec2 lattice_e2() const { return e2_; }

    // Crude but safe upper bound on the intrinsic diameter; sufficient to
    // guarantee attainment in min-over-lifts distance queries.
    double diameter_bound() const { return a_ + b_ + c_; }

    // Plane position of the chart point (face, (u,v,w)), u+v+w = 1.
    Vec2 chart_to_plane(int face, double u, double v, double w) const {
        const auto& f = faces_[face];
        return u * f[0] + v * f[1] + w * f[2];
    }

    struct ChartPoint {
        int face;
        double u, v, w;
    };

    // Folds an arbitrary plane point into the canonical chart representation.
    // Canonical means: the representative inside the big triangle ABC, with
    // glued boundary points resolved to a fixed half-edge, and the face index
    // minimal among the faces containing the point.
    ChartPoint fold(Vec2 p) const {
        constexpr double kSnap = 1e-12;

        // Affine coordinates in the frame (A; e1, e2), reduced mod 1.
        const Vec2 d = p - A_;
        double s = cross(d, e2_) * inv_det_;
        double t = cross(e1_, d) * inv_det_;
        s -= std::floor(s);
        t -= std::floor(t);
        if (s > 1.0 - kSnap) s = 0.0;
        if (t > 1.0 - kSnap) t = 0.0;
        if (s + t > 1.0 + kSnap) {  // upper half-cell: half-turn about Ma
            s = 1.0 - s;
            t = 1.0 - t;
        }

        // Boundary gluing. Vertices of ABC are all the same surface point;
        // glued half-edges resolve toward the representative listed in the
        // face tables (lowest face index wins).
        const bool on_ab = t <= kSnap;
        const bool on_ac = s <= kSnap;
        const bool on_bc = s + t >= 1.0 - kSnap;
        if ((on_ab && on_ac) || (on_ab && on_bc) || (on_ac && on_bc)) {
            return {1, 1.0, 0.0, 0.0};  // a vertex of ABC
        }
        if (on_ab) {
            t = 0.0;
            if (s > 0.5) s = 1.0 - s;  // [A,Mc] side of the gluing
        } else if (on_ac) {
            s = 0.0;
            if (t > 0.5) t = 1.0 - t;  // [A,Mb]
        } else if (on_bc) {
            const double s0 = s;
            if (s < 0.5) { s = t; t = s0; }  // [B,Ma]
            const double excess = s + t - 1.0;
            s -= excess;  // project exactly onto the diagonal
        }

        // Barycentric w.r.t. ABC, then medial sub-face classification.
        const double alpha = 1.0 - s - t, beta = s, gamma = t;
        ChartPoint cp{};
        if (alpha <= 0.5 + kSnap && beta <= 0.5 + kSnap && gamma <= 0.5 + kSnap) {
            cp = {0, 1.0 - 2.0 * alpha, 1.0 - 2.0 * beta, 1.0 - 2.0 * gamma};
        } else if (alpha > 0.5) {
            cp = {1, alpha - beta - gamma, 2.0 * beta, 2.0 * gamma};
        } else if (beta > 0.5) {
            cp = {2, 2.0 * alpha, beta - alpha - gamma, 2.0 * gamma};
        } else {
            cp = {3, 2.0 * alpha, 2.0 * beta, gamma - alpha - beta};
        }
        if (cp.u < 0.0) cp.u = 0.0;
        if (cp.v < 0.0) cp.v = 0.0;
        if (cp.w < 0.0) cp.w = 0.0;
        const double sum = cp.u + cp.v + cp.w;
        cp.u /= sum; cp.v /= sum; cp.w /= sum;
        return cp;
    }

    // Calls fn(g, g(y)) for every deck element g with |g(y) - center| <= radius.
    template <typename Fn>
    void for_each_deck_image_near(Vec2 y, Vec2 center, double radius, Fn&& fn) const {
        // Translations: |y + lambda - center| <= radius.
        enumerate_lattice(y - center, radius, [&](Vec2 lambda) {
            fn(DeckElement::lattice_translation(lambda), y + lambda);
        });
        // Half-turns: t - y with t in (A+B) + Lambda, |t - y - center| <= radius.
        const Vec2 t0 = A_ + B_;
        enumerate_lattice(t0 - y - center, radius, [&](Vec2 lambda) {
            DeckElement g = DeckElement::half_turn(0.5 * (t0 + lambda));
            fn(g, (t0 + lambda) - y);
        });
    }

    // Calls fn(g, g(y)) for every deck element g with |g(y)| <= radius.
    template <typename Fn>
    void for_each_deck_image(Vec2 y, double radius, Fn&& fn) const {
        for_each_deck_image_near(y, {0.0, 0.0}, radius, fn);
    }

    // Intrinsic distance between two canonical plane representatives:
    // min over deck elements g of |x - g(y)|. The arguments are ordered
    // internally so the computation is exactly symmetric. A non-default
    // radius widens the enumeration (the default already guarantees that the
    // minimum is attained).
    double distance_between_reps(Vec2 x, Vec2 y, double radius = -1.0) const {
        if (y.x < x.x || (y.x == x.x && y.y < x.y)) std::swap(x, y);
        if (radius < 0.0) radius = x.norm() + diameter_bound();
        double best = (x - y).norm();
        for_each_deck_image(y, radius, [&](const DeckElement&, Vec2 img) {
            const double d = (x - img).norm();
            if (d < best) best = d;
        });
        return best;
    }

    // The half-turn centers Mc + Lambda/2 are exactly the pre-images of the
    // four tetrahedron vertices (the singular set of the covering).
    double distance_to_singular_set(Vec2 p) const {
        const Vec2 mc = 0.5 * (A_ + B_);
        const Vec2 d = p - mc;
        // Reduce modulo Lambda/2 and scan the nearby residues. The window
        // covers the e1 - e2 direction too, which is the short lattice vector
        // when the face triangle is a sliver.
        double s = 2.0 * cross(d, e2_) * inv_det_;
        double t = 2.0 * cross(e1_, d) * inv_det_;
        s -= std::floor(s);
        t -= std::floor(t);
        double best2 = std::numeric_limits<double>::infinity();
        for (int i = -1; i <= 2; ++i)
            for (int j = -1; j <= 2; ++j) {
                const Vec2 r = 0.5 * ((s - i) * e1_ + (t - j) * e2_);
                best2 = std::min(best2, r.norm2());
            }
        return std::sqrt(best2);
    }

    std::array<Vec2, 3> face_vertices(int face) const { return faces_[face]; }

private:
    template <typename Fn>
    void enumerate_lattice(Vec2 base, double radius, Fn&& fn) const {
        // All lambda in Lambda with |base + lambda| <= radius.
        if (radius < 0) return;
        const double r = radius + base.norm();
        const int imax = int(std::floor(r / h1_)) + 1;
        const int jmax = int(std::floor(r / h2_)) + 1;
        const double rad2 = radius * radius;
        for (int i = -imax; i <= imax; ++i)
            for (int j = -jmax; j <= jmax; ++j) {
                const Vec2 lambda = double(i) * e1_ + double(j) * e2_;
                if ((base + lambda).norm2() <= rad2) fn(lambda);
            }
    }

    double a_, b_, c_;
    Vec2 A_, B_, C_;
    Vec2 e1_, e2_;
    double inv_det_;
    double h1_, h2_;
    std::array<std::array<Vec2, 3>, 4> faces_;
};

}  // namespace flatsteiner
