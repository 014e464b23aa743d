#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "freeholo/arrangement.hpp"
#include "freeholo/lasso_basis.hpp"
#include "freeholo/loop_geometry.hpp"
#include "test_support.hpp"

using namespace freeholo;

namespace {

Loop L(const char* text) { return parse_loop(text); }

// drop straight pass-through points, keeping index 0
std::vector<Point2> simplify(const std::vector<Point2>& pts) {
    std::vector<Point2> out;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const Point2& a = pts[i - 1];
            const Point2& b = pts[i];
            const Point2& c = pts[(i + 1) % n];
            if (orientation(a, b, c) == 0 && sgn(dot(b - a, c - b)) > 0) continue;
        }
        out.push_back(pts[i]);
    }
    return out;
}

// every pairwise intersection of input segments, by Cramer's rule and endpoint tests
std::set<Point2> brute_force_intersections(const std::vector<Loop>& loops) {
    std::vector<std::pair<Point2, Point2>> segs;
    for (const auto& l : loops)
        for (std::size_t i = 0; i < l.segment_count(); ++i) segs.emplace_back(l.segment_start(i), l.segment_end(i));
    auto on_segment = [](const Point2& p, const Point2& a, const Point2& b) {
        if (orientation(a, b, p) != 0) return false;
        return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
               p.y <= std::max(a.y, b.y);
    };
    std::set<Point2> out;
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const auto& [a, b] = segs[i];
            const auto& [c, d] = segs[j];
            Rational a1 = b.y - a.y, b1 = a.x - b.x, c1 = a1 * a.x + b1 * a.y;
            Rational a2 = d.y - c.y, b2 = c.x - d.x, c2 = a2 * c.x + b2 * c.y;
            Rational det = a1 * b2 - a2 * b1;
            if (det != 0) {
                Point2 p((b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det);
                if (on_segment(p, a, b) && on_segment(p, c, d)) out.insert(p);
            } else {
                for (const Point2* p : {&a, &b})
                    if (on_segment(*p, c, d)) out.insert(*p);
                for (const Point2* p : {&c, &d})
                    if (on_segment(*p, a, b)) out.insert(*p);
            }
        }
    return out;
}

Rational shoelace(const std::vector<Point2>& pts) {
    Rational a = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) a += cross(pts[i], pts[(i + 1) % pts.size()]);
    return a / 2;
}

EdgeWord random_closed_walk(std::mt19937_64& rng, const PlanarGraph& g, const SpanningTree& t, int steps) {
    EdgeWord w;
    int at = g.origin();
    for (int s = 0; s < steps; ++s) {
        const auto& out = g.rotation(at);
        std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
        const EdgeLetter l = out[pick(rng)];
        w.push_back(l);
        at = g.end(l);
    }
    return w + t.path(at, g.origin());
}

void check_structure(const Arrangement& arr, const std::vector<Loop>& loops) {
    const auto& g = arr.graph;
    CHECK(g.euler_characteristic() == 2);
    CHECK(g.vertices()[g.origin()] == Point2(0, 0));
    for (const auto& f : g.faces()) {
        CHECK(sgn(f.area) > 0);
        CHECK(shoelace(f.polygon) == f.area);
        CHECK(winding_number(f.polygon, f.interior_point) == 1);
        CHECK(winding_number(g.realize(f.boundary), f.interior_point) == 1);
    }
    // the outer boundary walks the drawing clockwise
    CHECK(-shoelace(g.realize(g.unbounded_boundary())) == g.total_bounded_area());

    std::set<Point2> fine;
    for (const auto& e : g.edges()) fine.insert(e.polyline.begin(), e.polyline.end());
    for (const auto& p : brute_force_intersections(loops)) CHECK(fine.count(p) == 1);

    REQUIRE(arr.loop_words.size() == loops.size());
    for (std::size_t i = 0; i < loops.size(); ++i) {
        CHECK(g.is_closed_at_origin(arr.loop_words[i]));
        CHECK(simplify(g.realize(arr.loop_words[i])) == simplify(loops[i].vertices()));
        auto embedded = g.embed(loops[i]);
        REQUIRE(embedded.has_value());
        CHECK(*embedded == arr.loop_words[i]);
    }
}

void check_basis(const PlanarGraph& g, const SpanningTree& t, const LassoBasis& basis) {
    const int k = basis.size();
    CHECK(static_cast<int>(g.edges().size() - t.tree_edges().size()) == k);
    for (int i = 0; i < k; ++i) {
        CHECK(g.is_closed_at_origin(basis.lassos()[i]));
        const auto poly = g.realize(basis.lassos()[i]);
        for (int j = 0; j < k; ++j) {
            const int face = basis.face_order()[j];
            CHECK(winding_number(poly, g.faces()[face].interior_point) == (i == j ? 1 : 0));
        }
        CHECK(basis.decompose(basis.lassos()[i]) == FreeWord::generator(k, i));
    }
}

} // namespace

TEST_CASE("parse_loop examples and errors") {
    auto sq = L("(0,0) (1,0) (1,1) (0,1)");
    CHECK(sq.segment_count() == 4);
    CHECK(sq.length() == doctest::Approx(4.0));
    CHECK(sq.signed_area() == 1);
    CHECK(L("(0,0) (3,0) (3,4)").length() == doctest::Approx(12.0));
    CHECK(L("(0,0) (1/2,0) (0.25,1.5) (0,0)").vertices().size() == 3);
    CHECK(L("(0,0) (1/2,0) (0.25,1.5)").vertices()[2] == Point2(Rational(1, 4), Rational(3, 2)));

    auto message = [](const char* text) {
        try {
            parse_loop(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("(0,0) (1,0)").find("loop not closed") != std::string::npos);
    CHECK(message("(0,0) (1,0) (1,0) (0,1)").find("repeated consecutive vertex") != std::string::npos);
    CHECK(message("(0,0) (1,0) (pi,1)").find("non-rational coordinate 'pi'") != std::string::npos);
    CHECK(message("(0,0) (1,0) (1e3,1)").find("non-rational coordinate") != std::string::npos);
    CHECK(message("(1,0) (1,1) (0,1)").find("(0,0)") != std::string::npos);

    std::istringstream file("# two loops\n(0,0) (1,0) (1,1)\n\n(0,0) (0,1) (-1,1)\n");
    CHECK(parse_loops(file).size() == 2);
    std::istringstream bad("(0,0) (1,0) (1,1)\n(0,0) (x,1) (1,1)\n");
    CHECK_THROWS_WITH_AS(parse_loops(bad), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("arrangement of simple configurations") {
    SUBCASE("unit square") {
        std::vector<Loop> loops{L("(0,0) (1,0) (1,1) (0,1)")};
        auto arr = build_arrangement(loops);
        CHECK(arr.graph.vertices().size() == 1);
        CHECK(arr.graph.edges().size() == 1);
        REQUIRE(arr.graph.faces().size() == 1);
        CHECK(arr.graph.faces()[0].area == 1);
        CHECK(arr.loop_words[0].size() == 1);
        check_structure(arr, loops);
    }
    SUBCASE("figure eight") {
        std::vector<Loop> loops{L("(0,0) (1,0) (1,1) (0,1)"), L("(0,0) (-1,0) (-1,-2) (0,-2)")};
        auto arr = build_arrangement(loops);
        CHECK(arr.graph.vertices().size() == 1);
        CHECK(arr.graph.edges().size() == 2);
        REQUIRE(arr.graph.faces().size() == 2);
        // lowest probe first
        CHECK(arr.graph.faces()[0].area == 2);
        CHECK(arr.graph.faces()[1].area == 1);
        check_structure(arr, loops);
    }
    SUBCASE("square and overlapping diagonal loop") {
        std::vector<Loop> loops{L("(0,0) (2,0) (2,2) (0,2)"), L("(0,0) (2,2) (2,0)")};
        auto arr = build_arrangement(loops);
        CHECK(arr.graph.faces().size() == 2);
        CHECK(arr.graph.total_bounded_area() == 4);
        for (const auto& f : arr.graph.faces()) CHECK(f.area == 2);
        check_structure(arr, loops);
    }
    SUBCASE("crossing loops") {
        std::vector<Loop> loops{L("(0,0) (3,0) (3,3) (0,3)"), L("(0,0) (1,-1) (4,2) (2,4) (-1,1)")};
        auto arr = build_arrangement(loops);
        check_structure(arr, loops);
        // union of two overlapping squares measured on the outer boundary
        CHECK(arr.graph.total_bounded_area() > 9);
    }
    SUBCASE("collinear overlaps and a spike") {
        std::vector<Loop> loops{L("(0,0) (2,0) (1,0) (1,1)"), L("(0,0) (3,0) (3,1) (1,0)")};
        auto arr = build_arrangement(loops);
        check_structure(arr, loops);
    }
    SUBCASE("doubled traversal shares edges") {
        std::vector<Loop> loops{L("(0,0) (1,0) (1,1) (0,1) (0,0) (1,0) (1,1) (0,1)")};
        auto arr = build_arrangement(loops);
        CHECK(arr.graph.edges().size() == 1);
        CHECK(arr.loop_words[0].size() == 2);
        check_structure(arr, loops);
    }
}

TEST_CASE("randomized arrangements satisfy the structural invariants") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> nl(1, 3), nc(2, 5);
        std::vector<Loop> loops;
        const int count = nl(rng);
        for (int i = 0; i < count; ++i) loops.push_back(testing::random_lattice_loop(rng, nc(rng)));
        auto arr = build_arrangement(loops);
        check_structure(arr, loops);
    }
}

TEST_CASE("spanning trees") {
    auto eight = build_arrangement({L("(0,0) (1,0) (1,1) (0,1)"), L("(0,0) (-1,0) (-1,-1) (0,-1)")});
    CHECK(SpanningTree::bfs(eight.graph).tree_edges().empty());

    auto split = build_arrangement({L("(0,0) (2,0) (2,2) (0,2)"), L("(0,0) (2,0) (2,2)")});
    const auto& g = split.graph;
    auto t = SpanningTree::bfs(g);
    CHECK(t.tree_edges().size() == g.vertices().size() - 1);
    for (int u = 0; u < static_cast<int>(g.vertices().size()); ++u) {
        CHECK(t.path(u, u).empty());
        for (int v = 0; v < static_cast<int>(g.vertices().size()); ++v) {
            CHECK(t.path(u, v) == t.path(v, u).inverse());
            const auto p = t.path(u, v);
            for (const auto& l : p.letters()) CHECK(t.contains(l.edge));
        }
    }
    auto r1 = SpanningTree::random(g, 5), r2 = SpanningTree::random(g, 5);
    CHECK(r1.tree_edges() == r2.tree_edges());
}

TEST_CASE("facial lasso bases") {
    SUBCASE("unit square") {
        auto arr = build_arrangement({L("(0,0) (1,0) (1,1) (0,1)")});
        auto t = SpanningTree::bfs(arr.graph);
        LassoBasis b(arr.graph, t);
        REQUIRE(b.size() == 1);
        CHECK(b.lassos()[0] == arr.loop_words[0]);
    }
    SUBCASE("figure eight words") {
        auto arr = build_arrangement({L("(0,0) (1,0) (1,1) (0,1) (0,0) (-1,0) (-1,-1) (0,-1)")});
        auto t = SpanningTree::bfs(arr.graph);
        LassoBasis b(arr.graph, t);
        REQUIRE(b.size() == 2);
        check_basis(arr.graph, t, b);
        // the upper square is traversed first; faces are enumerated lowest first
        CHECK(b.decompose(arr.loop_words[0]).str('b') == "b2 b1");
        const auto& w = arr.loop_words[0].letters();
        CHECK(b.decompose(EdgeWord({w[0], w[1], w[0].inverse()})).str('b') == "b2 b1 b2^-1");
    }
    SUBCASE("doubled square") {
        auto arr = build_arrangement({L("(0,0) (1,0) (1,1) (0,1) (0,0) (1,0) (1,1) (0,1)")});
        auto t = SpanningTree::bfs(arr.graph);
        LassoBasis b(arr.graph, t);
        CHECK(b.decompose(arr.loop_words[0]).str('b') == "b1^2");
    }
    SUBCASE("square split by a chord") {
        auto arr = build_arrangement({L("(0,0) (2,0) (2,2) (0,2)")}, {{Point2(2, 0), Point2(0, 2)}});
        auto t = SpanningTree::bfs(arr.graph);
        LassoBasis b(arr.graph, t);
        REQUIRE(b.size() == 2);
        check_basis(arr.graph, t, b);
        CHECK(b.decompose(arr.loop_words[0]).size() == 2);
    }
    SUBCASE("not closed at the origin") {
        auto arr = build_arrangement({L("(0,0) (2,0) (2,2) (0,2)"), L("(0,0) (2,0) (2,2)")});
        auto t = SpanningTree::bfs(arr.graph);
        LassoBasis b(arr.graph, t);
        for (const auto& e : arr.graph.edges())
            if (e.from != e.to && (e.from != 0 || e.to != 0)) {
                CHECK_THROWS_AS(b.decompose(EdgeWord({{e.id, 1}})), DomainError);
                break;
            }
    }
}

TEST_CASE("round trip and winding on random graphs, trees, enumerations and starts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> nl(1, 3), nc(2, 5);
        std::vector<Loop> loops;
        const int count = nl(rng);
        for (int i = 0; i < count; ++i) loops.push_back(testing::random_lattice_loop(rng, nc(rng)));
        auto arr = build_arrangement(loops);
        const auto& g = arr.graph;
        const int k = static_cast<int>(g.faces().size());
        for (int variant = 0; variant < 3; ++variant) {
            auto t = variant == 0 ? SpanningTree::bfs(g) : SpanningTree::random(g, rng());
            LassoOptions opt;
            if (variant > 0) {
                opt.face_order.resize(k);
                std::iota(opt.face_order.begin(), opt.face_order.end(), 0);
                std::shuffle(opt.face_order.begin(), opt.face_order.end(), rng);
                for (int f = 0; f < k; ++f)
                    opt.start_offset.push_back(static_cast<int>(rng() % g.faces()[f].boundary.size()));
            }
            LassoBasis b(g, t, opt);
            check_basis(g, t, b);
            for (const auto& w : arr.loop_words) CHECK(b.realize(b.decompose(w)).reduced() == w.reduced());
            for (int s = 0; s < 5; ++s) {
                auto w = random_closed_walk(rng, g, t, 12);
                CHECK(b.realize(b.decompose(w)).reduced() == w.reduced());
            }
        }
    }
}

TEST_CASE("refinement chords split every face") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Loop> loops{testing::random_lattice_loop(rng, 4), testing::random_lattice_loop(rng, 3)};
        auto arr = build_arrangement(loops);
        auto fine = build_arrangement(loops, refinement_chords(arr.graph));
        CHECK(fine.graph.faces().size() == 2 * arr.graph.faces().size());
        CHECK(fine.graph.total_bounded_area() == arr.graph.total_bounded_area());
        check_structure(fine, loops);
    }
}

TEST_CASE("dyadic approximations") {
    auto sq = L("(0,0) (1,0) (1,1) (0,1)");
    auto d1 = dyadic_approx(sq, 1);
    REQUIRE(d1.vertices().size() == 2);
    CHECK(d1.vertices()[1] == Point2(1, 1));
    CHECK(d1.length() == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(dyadic_approx(sq, 2).vertices() == sq.vertices());
    CHECK(dyadic_approx(sq, 3).length() == doctest::Approx(4.0));

    // an arrangement of the degenerate 2-gon has no bounded face
    auto arr = build_arrangement({d1});
    CHECK(arr.graph.faces().empty());
    CHECK(arr.graph.euler_characteristic() == 2);

    auto tri = L("(0,0) (5,1) (2,4)");
    double prev = 0.0;
    for (unsigned n = 1; n <= 8; ++n) {
        const double len = dyadic_approx(tri, n).length();
        CHECK(len <= tri.length() + 1e-12);
        CHECK(len >= prev - 1e-12);
        prev = len;
    }
    CHECK(prev == doctest::Approx(tri.length()).epsilon(1e-2));

    CHECK_THROWS_WITH_AS(dyadic_approx(sq, 6, 2), doctest::Contains("grid too coarse"), DomainError);
    CHECK_THROWS_AS(dyadic_approx(sq, 0), DomainError);
}

TEST_CASE("linear images") {
    auto sq = L("(0,0) (1,0) (1,1) (0,1)");
    auto sheared = linear_image(sq, 1, Rational(1, 2), 0, 1);
    CHECK(sheared.signed_area() == 1);
    CHECK(sheared.vertices()[2] == Point2(Rational(3, 2), 1));
}

TEST_CASE("unreduced fractions in coordinates") {
    CHECK(Point2(Rational(-3, 3), Rational(0, 3)) == Point2(-1, 0));
    std::vector<Point2> pts{Point2(0, 0), Point2(Rational(-1, 3), Rational(5, 3)), Point2(Rational(-3, 3), Rational(-4, 3)),
                            Point2(Rational(0, 3), Rational(-6, 3)), Point2(Rational(-3, 3), Rational(-2, 3))};
    const std::vector<Loop> loops{Loop(pts)};
    auto arr = build_arrangement(loops);
    check_structure(arr, loops);
}
