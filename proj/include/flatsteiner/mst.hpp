#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatsteiner/space.hpp"
#include "flatsteiner/tree.hpp"

namespace flatsteiner {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

inline std::vector<SurfacePoint> canonical_distinct_points(
    const Space& space, const std::vector<SurfacePoint>& points, size_t min_count) {
    if (points.size() < min_count)
        throw std::invalid_argument("need at least " + std::to_string(min_count) + " points");
    std::vector<SurfacePoint> canon;
    canon.reserve(points.size());
    for (const auto& p : points) canon.push_back(space.canonical(p));
    for (size_t i = 0; i < canon.size(); ++i)
        for (size_t j = i + 1; j < canon.size(); ++j)
            if (canon[i] == canon[j])
                throw std::invalid_argument("duplicate points at indices " + std::to_string(i) +
                                            " and " + std::to_string(j));
    return canon;
}

}  // namespace detail

// Minimal spanning tree over the complete intrinsic-distance graph.
// Kruskal with ties broken by lexicographic edge order, so the result is
// deterministic under permutation-stable input. n stays small everywhere in
// this library; no spatial acceleration.
inline Tree mst(const Space& space, const std::vector<SurfacePoint>& points) {
    const auto canon = detail::canonical_distinct_points(space, points, 2);
    const int n = int(canon.size());

    struct WeightedEdge {
        double w;
        int i, j;
    };
    std::vector<WeightedEdge> all;
    all.reserve(size_t(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all.push_back({space.distance(canon[i], canon[j]), i, j});
    std::sort(all.begin(), all.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    Tree tree;
    tree.vertices.reserve(n);
    for (const auto& p : canon) tree.vertices.push_back({p, VertexRole::Terminal});
    detail::UnionFind uf(n);
    for (const auto& e : all) {
        if (!uf.unite(e.i, e.j)) continue;
        tree.edges.emplace_back(e.i, e.j);
        tree.edge_lengths.push_back(e.w);
        tree.total_length += e.w;
        if (int(tree.edges.size()) == n - 1) break;
    }
    return tree;
}

inline double mst_length(const Space& space, const std::vector<SurfacePoint>& points) {
    return mst(space, points).total_length;
}

}  // namespace flatsteiner
