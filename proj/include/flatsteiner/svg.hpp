#pragma once

#include <algorithm>
#include <ostream>
#include <string>

#include "flatsteiner/tree.hpp"

namespace flatsteiner {

// Renders a tree as SVG: one <line> per edge and one <circle> marker per
// vertex (terminals filled dark, Steiner points light). Uses the plane lift
// when the tree carries one; otherwise vertices are drawn at their chart
// positions and edges as straight chart segments.
inline void render_tree_svg(std::ostream& os, const Space& space, const Tree& tree,
                            int size = 480) {
    std::vector<Vec2> pos;
    if (!tree.plane_lift.empty()) {
        pos = tree.plane_lift;
    } else {
        for (const auto& v : tree.vertices) pos.push_back(space.chart_position(v.point));
    }

    Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
    for (const auto& p : pos) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});
    const double pad = 0.08 * span;
    const double scale = size / (span + 2 * pad);
    auto sx = [&](double x) { return (x - lo.x + pad) * scale; };
    auto sy = [&](double y) { return size - (y - lo.y + pad) * scale; };  // y up

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
       << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    for (const auto& [u, v] : tree.edges)
        os << "  <line x1=\"" << sx(pos[size_t(u)].x) << "\" y1=\"" << sy(pos[size_t(u)].y)
           << "\" x2=\"" << sx(pos[size_t(v)].x) << "\" y2=\"" << sy(pos[size_t(v)].y)
           << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    for (size_t i = 0; i < tree.vertices.size(); ++i) {
        const bool terminal = tree.vertices[i].role == VertexRole::Terminal;
        os << "  <circle cx=\"" << sx(pos[i].x) << "\" cy=\"" << sy(pos[i].y) << "\" r=\""
           << (terminal ? 5 : 3.5) << "\" fill=\"" << (terminal ? "#d62728" : "#aec7e8")
           << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace flatsteiner
