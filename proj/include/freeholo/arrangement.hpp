#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "freeholo/loop_geometry.hpp"
#include "freeholo/rational.hpp"

namespace freeholo {

/// Undirected polyline edge; polyline runs from vertex `from` to vertex `to`.
struct GraphEdge {
    int id = 0;
    int from = 0;
    int to = 0;
    std::vector<Point2> polyline;
};

/// Bounded face of the embedded graph.
struct Face {
    int id = 0;
    EdgeWord boundary;             // counterclockwise, started at the lexicographically smallest vertex
    Rational area;                 // exact, > 0
    Point2 interior_point;         // lowest-then-leftmost scanline probe
    std::vector<Point2> polygon;   // boundary polyline
    std::pair<Point2, Point2> probe_chord;  // horizontal chord through interior_point, ends on the boundary
};

/// Finite connected planar graph induced by a family of polylines, with exact faces.
///
/// Vertices are the origin, every point of degree other than 2, and every point where an
/// input loop turns back on itself. Points of degree 2 are interior polyline vertices.
class PlanarGraph {
public:
    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const EdgeWord& unbounded_boundary() const { return unbounded_; }
    int origin() const { return 0; }

    int start(EdgeLetter l) const { return l.sign > 0 ? edges_[l.edge].from : edges_[l.edge].to; }
    int end(EdgeLetter l) const { return l.sign > 0 ? edges_[l.edge].to : edges_[l.edge].from; }
    /// Bounded face on the left of the oriented edge, or -1 for the unbounded face.
    int face_left_of(EdgeLetter l) const;
    /// Oriented edges leaving v, counterclockwise by initial direction (starting from angle 0).
    const std::vector<EdgeLetter>& rotation(int v) const { return rotation_[v]; }

    /// V - E + F with F counting the unbounded face.
    long euler_characteristic() const;
    Rational total_bounded_area() const;

    /// Polyline of a path starting at the start vertex of its first letter (origin if empty).
    std::vector<Point2> realize(const EdgeWord& w) const;
    /// True when the word is a closed path at the origin.
    bool is_closed_at_origin(const EdgeWord& w) const;
    /// Expresses a loop drawn on the graph as an edge word; nullopt if it leaves the graph.
    std::optional<EdgeWord> embed(const Loop& loop) const;

private:
    friend class ArrangementBuilder;

    std::vector<Point2> vertices_;
    std::vector<GraphEdge> edges_;
    std::vector<Face> faces_;
    EdgeWord unbounded_;
    std::vector<std::vector<EdgeLetter>> rotation_;
    std::vector<int> face_left_[2];  // [sign>0 ? 0 : 1][edge]

    // fine structure: every polyline segment between consecutive points
    std::vector<Point2> fine_points_;
    std::map<Point2, int> fine_index_;
    struct FineStep {
        int edge;
        int sign;
        int position;  // index of the step within the oriented edge
        int length;    // number of steps of the oriented edge
    };
    std::map<std::pair<int, int>, FineStep> fine_steps_;
    std::optional<EdgeWord> fine_path_to_word(const std::vector<int>& path) const;
};

struct Arrangement {
    PlanarGraph graph;
    std::vector<EdgeWord> loop_words;  // one per input loop, unreduced
};

/// Builds the planar graph of the loops (all based at the origin). Extra segments must touch
/// the drawing so the graph stays connected; they are used to subdivide faces.
Arrangement build_arrangement(const std::vector<Loop>& loops,
                              const std::vector<std::pair<Point2, Point2>>& extra_segments = {});

/// One chord per bounded face, splitting it in two along its scanline probe.
std::vector<std::pair<Point2, Point2>> refinement_chords(const PlanarGraph& graph);

} // namespace freeholo
