// A short tour: the same three-terminal configuration on the plane, on a
// cone covered by the plane, and around a high-angle cone apex, showing
// where the Steiner ratio stays at the planar value and where it drops.
#include <cstdio>
#include <numbers>
#include <vector>

#include "flatsteiner/flatsteiner.hpp"

using namespace flatsteiner;

int main() {
    constexpr double pi = std::numbers::pi;

    // Plane: the regular triangle, the conjectured worst case.
    {
        const std::vector<SurfacePoint> triangle{
            SurfacePoint::plane(0, 0), SurfacePoint::plane(1, 0),
            SurfacePoint::plane(0.5, std::sqrt(3.0) / 2)};
        const auto report = steiner_ratio(Space::plane(), triangle);
        std::printf("plane equilateral      smt=%.7f mst=%.7f sr=%.7f\n", report.smt,
                    report.mst, report.sr);
    }

    // Cone of angle 2*pi/3: computed through the branched covering, the
    // ratio cannot drop below the plane's.
    {
        const Space cone = Space::cone_sheets(3);
        const auto report = search_inf(cone, 3, 80, 1);
        std::printf("cone 2pi/3 search      best sr=%.7f (restart %d)\n", report.sr,
                    report.meta.best_restart);
    }

    // Cone of angle 5*pi/2: total angle above 2*pi, so an equilateral triple
    // around the apex beats the planar ratio.
    {
        const Space cone = Space::cone(5 * pi / 2);
        std::vector<SurfacePoint> triple;
        for (int i = 0; i < 3; ++i)
            triple.push_back(SurfacePoint::cone(1.0, 5 * pi / 2 * i / 3));
        const auto report = steiner_ratio(cone, triple);
        std::printf("cone 5pi/2 triple      sr <= %.7f (%s)\n", report.sr,
                    report.smt_is_exact ? "exact" : "upper bound");
    }

    // Disphenoid: three vertices of one face of the regular tetrahedron.
    {
        const Space dsp = Space::disphenoid(1, 1, 1);
        const std::vector<SurfacePoint> face{SurfacePoint::disphenoid(0, 1, 0, 0),
                                             SurfacePoint::disphenoid(0, 0, 1, 0),
                                             SurfacePoint::disphenoid(0, 0, 0, 1)};
        const auto report = steiner_ratio(dsp, face);
        std::printf("tetrahedron face       smt=%.7f mst=%.7f sr=%.7f\n", report.smt,
                    report.mst, report.sr);
    }
    return 0;
}
