#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace freeholo {

using Rational = mpq_class;

/// Point of the plane with exact rational coordinates.
struct Point2 {
    Rational x, y;

    Point2() = default;
    // mpq_class(num, den) is not reduced; comparisons need canonical form
    Point2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {
        x.canonicalize();
        y.canonicalize();
    }

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend std::strong_ordering operator<=>(const Point2& a, const Point2& b) {
        if (int c = cmp(a.x, b.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (int c = cmp(a.y, b.y); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }

inline Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }
/// Sign of (b - a) x (c - a): +1 for a left turn.
inline int orientation(const Point2& a, const Point2& b, const Point2& c) { return sgn(cross(b - a, c - a)); }

/// Exact angular order of direction vectors, counterclockwise from the positive x axis.
bool angle_less(const Point2& u, const Point2& v);

/// Parses an integer, a fraction "p/q" or a finite decimal "1.25" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Point2& p);
double to_double(const Rational& q);

/// Nearest point of the grid 2^-bits Z (ties away from zero).
Rational snap(double value, unsigned bits);

/// Euclidean length of a segment, in floating point.
double distance(const Point2& a, const Point2& b);

} // namespace freeholo
