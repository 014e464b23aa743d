#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "freeholo/levy_engine.hpp"
#include "freeholo/loop_geometry.hpp"
#include "freeholo/word_moments.hpp"

namespace freeholo::testing {

inline CharTriplet random_triplet(std::mt19937_64& rng, int max_atoms = 3) {
    std::uniform_real_distribution<double> alpha(-2.0, 2.0), b(0.0, 2.0), angle(-std::numbers::pi, std::numbers::pi),
        weight(0.05, 1.0);
    std::uniform_int_distribution<int> count(0, max_atoms);
    CharTriplet tr{alpha(rng), b(rng), {}};
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        double a = angle(rng);
        if (a == 0.0) a = 1.0;
        tr.atoms.push_back({a, weight(rng)});
    }
    return tr;
}

/// Random power word over k generators with `letters` unit letters (before merging).
inline PowerWord random_word(std::mt19937_64& rng, int k, int letters) {
    std::uniform_int_distribution<int> gen(0, k - 1), sgn(0, 1);
    std::vector<PowerLetter> ls;
    for (int i = 0; i < letters; ++i) ls.push_back({gen(rng), sgn(rng) ? 1L : -1L});
    return PowerWord(std::move(ls));
}

/// Marginals of k free increments of randomly drawn triplets at random times.
inline Marginals random_marginals(std::mt19937_64& rng, int k, std::size_t depth = 16) {
    std::uniform_real_distribution<double> time(0.1, 2.0);
    std::vector<MomentSeries> s;
    for (int i = 0; i < k; ++i) s.push_back(moments(random_triplet(rng), time(rng), depth));
    return Marginals(std::move(s));
}

/// Free Haar unitaries: every nonzero moment vanishes.
inline Marginals haar_marginals(int k, std::size_t depth = 16) {
    std::vector<MomentSeries> s;
    for (int i = 0; i < k; ++i) {
        MomentSeries m;
        m.m.assign(depth + 1, cplx{});
        m.m[0] = 1.0;
        s.push_back(m);
    }
    return Marginals(std::move(s));
}

/// Symmetric marginal with tau(a^n) = r^|n| for all n (real r in [0,1]).
inline MomentSeries geometric_series(double r, std::size_t depth = 16) {
    MomentSeries m;
    m.m.resize(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n) m.m[n] = std::pow(r, static_cast<double>(n));
    return m;
}

/// Lattice polygon from the origin with `corners` further vertices in [-r, r]^2.
inline Loop random_lattice_loop(std::mt19937_64& rng, int corners, int r = 3) {
    std::uniform_int_distribution<int> c(-r, r);
    for (;;) {
        std::vector<Point2> pts{Point2(0, 0)};
        while (static_cast<int>(pts.size()) <= corners) {
            Point2 p(c(rng), c(rng));
            if (p != pts.back()) pts.push_back(p);
        }
        if (pts.back() != pts.front()) return Loop(std::move(pts));
    }
}

} // namespace freeholo::testing
