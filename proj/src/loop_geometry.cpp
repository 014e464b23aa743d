#include "freeholo/loop_geometry.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "freeholo/free_group.hpp"

namespace freeholo {

Loop::Loop(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw DomainError("a loop needs at least one segment away from the origin");
    if (vertices_.front() != Point2(0, 0)) throw DomainError("loop must start at the origin");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] == vertices_[(i + 1) % vertices_.size()])
            throw DomainError("repeated consecutive vertex " + to_string(vertices_[i]));
    }
}

double Loop::length() const {
    double l = 0.0;
    for (std::size_t i = 0; i < segment_count(); ++i) l += distance(segment_start(i), segment_end(i));
    return l;
}

Rational Loop::signed_area() const {
    Rational a = 0;
    for (std::size_t i = 0; i < segment_count(); ++i) a += cross(segment_start(i), segment_end(i));
    return a / 2;
}

std::string Loop::str() const {
    std::string s;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i) s += ' ';
        s += to_string(vertices_[i]);
    }
    return s;
}

Loop parse_loop(std::string_view text) {
    std::vector<Point2> pts;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("expected '(' at '" + std::string(text.substr(i, 12)) + "'");
        auto close = text.find(')', i);
        if (close == std::string_view::npos) throw ParseError("unterminated vertex '" + std::string(text.substr(i, 12)) + "'");
        auto inner = text.substr(i + 1, close - i - 1);
        auto comma = inner.find(',');
        if (comma == std::string_view::npos) throw ParseError("vertex without comma '" + std::string(inner) + "'");
        auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        pts.emplace_back(parse_rational(trim(inner.substr(0, comma))), parse_rational(trim(inner.substr(comma + 1))));
        i = close + 1;
        skip_ws();
    }
    if (pts.empty()) throw ParseError("empty loop");
    if (pts.front() != Point2(0, 0)) throw ParseError("loop must start at (0,0), got " + to_string(pts.front()));
    if (pts.size() > 1 && pts.back() == pts.front()) pts.pop_back();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        if (pts[k] == pts[k + 1]) throw ParseError("repeated consecutive vertex " + to_string(pts[k]));
    if (pts.size() < 3) throw ParseError("loop not closed: need at least three vertices");
    return Loop(std::move(pts));
}

std::vector<Loop> parse_loops(std::istream& in) {
    std::vector<Loop> loops;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            loops.push_back(parse_loop(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return loops;
}

Loop linear_image(const Loop& loop, const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    std::vector<Point2> pts;
    for (const auto& p : loop.vertices()) pts.emplace_back(a * p.x + b * p.y, c * p.x + d * p.y);
    return Loop(std::move(pts));
}

Loop dyadic_approx(const Loop& loop, unsigned n, unsigned grid_bits) {
    if (n > 30) throw DomainError("grid too coarse: dyadic level " + std::to_string(n) + " is too deep");
    const std::size_t count = std::size_t{1} << n;
    const std::size_t segs = loop.segment_count();
    std::vector<double> seg_len(segs);
    double total = 0.0;
    for (std::size_t i = 0; i < segs; ++i) total += seg_len[i] = distance(loop.segment_start(i), loop.segment_end(i));

    std::vector<Point2> pts;
    pts.emplace_back(0, 0);
    std::size_t seg = 0;
    double seg_begin = 0.0;  // arclength at the start of segment `seg`
    for (std::size_t k = 1; k < count; ++k) {
        const double s = total * static_cast<double>(k) / static_cast<double>(count);
        while (seg + 1 < segs && seg_begin + seg_len[seg] <= s) {
            seg_begin += seg_len[seg];
            ++seg;
        }
        const Point2& a = loop.segment_start(seg);
        const Point2& b = loop.segment_end(seg);
        Point2 p;
        const double local = s - seg_begin;
        if (local <= 0.0) {
            p = a;
        } else if (local >= seg_len[seg]) {
            p = b;
        } else {
            const double f = local / seg_len[seg];
            const double ax = to_double(a.x), ay = to_double(a.y);
            const double x = ax + f * (to_double(b.x) - ax), y = ay + f * (to_double(b.y) - ay);
            p = Point2(snap(x, grid_bits), snap(y, grid_bits));
        }
        if (p == pts.back()) throw DomainError("grid too coarse: consecutive dyadic samples coincide");
        pts.push_back(std::move(p));
    }
    if (pts.size() > 1 && pts.back() == pts.front()) throw DomainError("grid too coarse: consecutive dyadic samples coincide");
    if (pts.size() < 2) throw DomainError("dyadic approximation of level 0 is the constant loop");
    return Loop(std::move(pts));
}

EdgeWord EdgeWord::reduced() const {
    std::vector<EdgeLetter> out;
    out.reserve(letters_.size());
    for (const auto& l : letters_) {
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return EdgeWord(std::move(out));
}

EdgeWord EdgeWord::inverse() const {
    std::vector<EdgeLetter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
    return EdgeWord(std::move(out));
}

EdgeWord& EdgeWord::operator+=(const EdgeWord& o) {
    letters_.insert(letters_.end(), o.letters_.begin(), o.letters_.end());
    return *this;
}

EdgeWord EdgeWord::rotated(std::size_t start) const {
    if (letters_.empty()) return *this;
    std::vector<EdgeLetter> out(letters_.begin() + static_cast<long>(start % letters_.size()), letters_.end());
    out.insert(out.end(), letters_.begin(), letters_.begin() + static_cast<long>(start % letters_.size()));
    return EdgeWord(std::move(out));
}

std::string EdgeWord::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << (letters_[i].sign < 0 ? "-" : "") << letters_[i].edge;
    }
    return os.str();
}

int winding_number(const std::vector<Point2>& polyline, const Point2& p) {
    int wn = 0;
    const std::size_t n = polyline.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = polyline[i];
        const Point2& b = polyline[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orientation(a, b, p) > 0) ++wn;
        } else if (b.y <= p.y && orientation(a, b, p) < 0) {
            --wn;
        }
    }
    return wn;
}

} // namespace freeholo
