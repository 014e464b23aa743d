#pragma once

#include <cstdint>
#include <vector>

#include "freeholo/arrangement.hpp"
#include "freeholo/free_group.hpp"

namespace freeholo {

/// Spanning tree of a connected planar graph, rooted at the origin.
class SpanningTree {
public:
    /// Breadth-first from the origin, neighbours visited counterclockwise by edge angle.
    static SpanningTree bfs(const PlanarGraph& graph);
    /// Uniformly shuffled Kruskal tree; deterministic in the seed.
    static SpanningTree random(const PlanarGraph& graph, std::uint64_t seed);

    const std::vector<int>& tree_edges() const { return tree_edges_; }
    bool contains(int edge) const { return in_tree_.at(edge); }
    /// Unique path in the tree from u to v (empty for u == v).
    EdgeWord path(int u, int v) const;

private:
    SpanningTree(const PlanarGraph& graph, std::vector<int> edges);

    std::vector<int> tree_edges_;
    std::vector<bool> in_tree_;
    std::vector<EdgeWord> from_root_;  // reduced tree path origin -> v
};

struct LassoOptions {
    std::vector<int> face_order;    // generator i is face face_order[i]; empty = canonical order
    std::vector<int> start_offset;  // rotation of c_F applied to the canonical start; empty = none
};

/// Facial lassos l_F = [0, c_F start]_T c_F [c_F start, 0]_T, one per bounded face.
///
/// Generator i of the free group is the lasso of face face_order[i]. The non-tree edge lassos
/// are expressed in facial lassos by peeling the dual tree from its leaves towards the
/// unbounded face.
class LassoBasis {
public:
    LassoBasis(const PlanarGraph& graph, const SpanningTree& tree, const LassoOptions& options = {});

    int size() const { return static_cast<int>(lassos_.size()); }
    const std::vector<EdgeWord>& lassos() const { return lassos_; }
    const std::vector<int>& face_order() const { return face_order_; }
    /// Generator index of each face id.
    int generator_of_face(int face) const { return generator_of_face_.at(face); }

    /// Reduced word w with w(lassos) equal to the loop in the fundamental group.
    FreeWord decompose(const EdgeWord& loop) const;
    /// Edge path obtained by substituting the lassos into w (not reduced).
    EdgeWord realize(const FreeWord& w) const;

private:
    const PlanarGraph* graph_;
    const SpanningTree* tree_;
    std::vector<int> face_order_;
    std::vector<int> generator_of_face_;
    std::vector<EdgeWord> lassos_;
    std::vector<FreeWord> edge_lasso_;  // per edge; meaningful for non-tree edges only
};

} // namespace freeholo
