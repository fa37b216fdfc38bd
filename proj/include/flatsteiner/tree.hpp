#pragma once

#include <utility>
#include <vector>

#include "flatsteiner/space.hpp"

namespace flatsteiner {

enum class VertexRole { Terminal, Steiner };

struct TreeVertex {
    SurfacePoint point;
    VertexRole role = VertexRole::Terminal;
};

// A realized network: vertex positions, edges as index pairs, and lengths.
// Always connected and acyclic. For trees produced by lifting to the plane,
// `plane_lift` holds the plane position of each vertex (empty otherwise);
// edge lengths are then the lifted segment lengths, which equal the lengths
// of the projected geodesic edges.
struct Tree {
    std::vector<TreeVertex> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> edge_lengths;
    double total_length = 0.0;
    std::vector<Vec2> plane_lift;

    int terminal_count() const {
        int n = 0;
        for (const auto& v : vertices)
            if (v.role == VertexRole::Terminal) ++n;
        return n;
    }
};

}  // namespace flatsteiner
