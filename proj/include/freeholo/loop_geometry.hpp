#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "freeholo/rational.hpp"

namespace freeholo {

/// Closed polyline based at the origin. vertices[0] is (0,0); the closing segment back to
/// the origin is implicit.
class Loop {
public:
    Loop() = default;
    /// Validates: first vertex is the origin, at least two vertices, no repeated consecutive vertex.
    explicit Loop(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t segment_count() const { return vertices_.size(); }
    const Point2& segment_start(std::size_t i) const { return vertices_[i]; }
    const Point2& segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
    /// Sum of Euclidean segment lengths (floating point).
    double length() const;
    /// Exact signed area by the shoelace formula (winding-weighted).
    Rational signed_area() const;

    std::string str() const;

private:
    std::vector<Point2> vertices_;
};

/// Parses "(0,0) (1,0) (1,1) (0,1)". Coordinates are integers, fractions or finite decimals.
/// A trailing "(0,0)" closing vertex is accepted and dropped. Fewer than three distinct
/// vertices cannot bound anything and are rejected as "loop not closed".
Loop parse_loop(std::string_view text);

/// One loop per line; blank lines and lines starting with '#' are skipped.
std::vector<Loop> parse_loops(std::istream& in);

/// Image of the loop under the linear map (x, y) -> (a x + b y, c x + d y).
Loop linear_image(const Loop& loop, const Rational& a, const Rational& b, const Rational& c, const Rational& d);

/// Polygon through the arclength samples at multiples of 2^-n length, snapped to the grid 2^-grid_bits.
/// Throws DomainError("grid too coarse") when two consecutive samples snap to the same point.
Loop dyadic_approx(const Loop& loop, unsigned n, unsigned grid_bits = 64);

/// Letter of a path in a graph: oriented edge (sign +1 along the edge's stored direction).
struct EdgeLetter {
    int edge = 0;
    int sign = 1;

    EdgeLetter inverse() const { return {edge, -sign}; }
    friend bool operator==(const EdgeLetter&, const EdgeLetter&) = default;
    friend auto operator<=>(const EdgeLetter&, const EdgeLetter&) = default;
};

/// Word in oriented graph edges. Paths may backtrack; reduced() removes e e^-1 factors.
class EdgeWord {
public:
    EdgeWord() = default;
    explicit EdgeWord(std::vector<EdgeLetter> letters) : letters_(std::move(letters)) {}

    const std::vector<EdgeLetter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    void push_back(EdgeLetter l) { letters_.push_back(l); }

    EdgeWord reduced() const;
    EdgeWord inverse() const;
    EdgeWord& operator+=(const EdgeWord& o);
    friend EdgeWord operator+(EdgeWord a, const EdgeWord& b) { return a += b; }
    /// The same closed word started at letter `start`.
    EdgeWord rotated(std::size_t start) const;
    std::string str() const;

    friend bool operator==(const EdgeWord&, const EdgeWord&) = default;

private:
    std::vector<EdgeLetter> letters_;
};

/// Winding number of a closed polyline (points, implicitly closed) around p; p must not lie on it.
int winding_number(const std::vector<Point2>& polyline, const Point2& p);

} // namespace freeholo
