#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace flatsteiner {

// A full Steiner topology: a combinatorial tree on n terminals (degree 1,
// vertex ids 0..n-1) and n-2 Steiner vertices (degree 3, ids n..2n-3).
// Degenerate optimal trees arise as limits inside a full topology's closure,
// so enumerating full topologies suffices for the minimum.
struct Topology {
    int terminal_count = 0;
    std::vector<std::pair<int, int>> edges;

    int steiner_count() const { return terminal_count - 2; }
    int vertex_count() const { return 2 * terminal_count - 2; }
};

// All (2n-5)!! full Steiner topologies on n labeled terminals, 3 <= n <= 7.
// Each topology on m+1 terminals arises from exactly one topology on m
// terminals by splitting one of its 2m-3 edges with a fresh Steiner vertex
// and hanging terminal m from it, so the recursion is duplicate-free.
inline std::vector<Topology> enumerate_full_topologies(int n) {
    if (n < 3 || n > 7)
        throw std::invalid_argument("full topology enumeration supports 3 <= n <= 7");

    std::vector<Topology> current;
    current.push_back({n, {{0, n}, {1, n}, {2, n}}});
    for (int m = 3; m < n; ++m) {
        std::vector<Topology> next;
        next.reserve(current.size() * (2 * m - 3));
        const int fresh_steiner = n + m - 2;
        for (const auto& topo : current) {
            for (size_t e = 0; e < topo.edges.size(); ++e) {
                Topology grown = topo;
                const auto [u, v] = grown.edges[e];
                grown.edges[e] = {u, fresh_steiner};
                grown.edges.push_back({v, fresh_steiner});
                grown.edges.push_back({m, fresh_steiner});
                next.push_back(std::move(grown));
            }
        }
        current = std::move(next);
    }
    return current;
}

}  // namespace flatsteiner
