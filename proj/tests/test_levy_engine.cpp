#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "freeholo/levy_engine.hpp"
#include "freeholo/word_moments.hpp"
#include "test_support.hpp"

using namespace freeholo;

namespace {

// Biane's closed form for the free unitary Brownian motion with unit diffusivity:
// m_n(t) = e^{-nt/2} sum_{k<n} (-t)^k / k! n^{k-1} C(n, k+1).
cplx fubm_moment(int n, double t) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        double binom = 1.0;
        for (int j = 0; j < k + 1; ++j) binom = binom * (n - j) / (j + 1);
        s += std::pow(-t, k) / std::tgamma(k + 1.0) * std::pow(n, k - 1) * binom;
    }
    return std::exp(-n * t / 2.0) * s;
}

// Lagrange inversion: if psi(z) = z / h(z) then [z^n] psi^{-1} = (1/n) [w^{n-1}] h(w)^n,
// here with h = (1 + w)/S(w). Plain coefficient loops, independent of PowerSeries::reversion.
std::vector<cplx> lagrange_moments(const CharTriplet& tr, double t, int order) {
    PowerSeries s = sigma_series(tr, t, order);
    std::vector<cplx> inv_s(order + 1);
    inv_s[0] = 1.0 / s[0];
    for (int n = 1; n <= order; ++n) {
        cplx acc{};
        for (int j = 1; j <= n; ++j) acc += s[j] * inv_s[n - j];
        inv_s[n] = -acc / s[0];
    }
    std::vector<cplx> h(order + 1);
    for (int n = 0; n <= order; ++n) h[n] = inv_s[n] + (n ? inv_s[n - 1] : cplx{});
    std::vector<cplx> m(order + 1);
    m[0] = 1.0;
    std::vector<cplx> pw(order + 1, cplx{});
    pw[0] = 1.0;
    for (int n = 1; n <= order; ++n) {
        std::vector<cplx> next(order + 1, cplx{});
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order; ++j) next[i + j] += pw[i] * h[j];
        pw = next;
        m[n] = pw[n - 1] / static_cast<double>(n);
    }
    return m;
}

} // namespace

TEST_CASE("power series primitives") {
    PowerSeries z = PowerSeries::variable(6);
    PowerSeries e = z.exp();
    for (int n = 0; n <= 6; ++n) CHECK(std::abs(e[n] - 1.0 / std::tgamma(n + 1.0)) < 1e-15);
    PowerSeries one_minus = PowerSeries::constant(6, 1.0) - z;
    PowerSeries geo = one_minus.reciprocal();
    for (int n = 0; n <= 6; ++n) CHECK(std::abs(geo[n] - 1.0) < 1e-15);
    // z/(1-z) reverts to z/(1+z)
    PowerSeries f = z * geo;
    PowerSeries g = f.reversion();
    for (int n = 1; n <= 6; ++n) CHECK(std::abs(g[n] - std::pow(-1.0, n + 1)) < 1e-13);
    CHECK(std::abs((f.compose(g) - z)[5]) < 1e-13);
    CHECK_THROWS_AS(PowerSeries::constant(3, 1.0).reversion(), DomainError);
}

TEST_CASE("sigma_series examples") {
    auto s = sigma_series({0.0, 0.0, {}}, 1.3, 8);
    CHECK(std::abs(s[0] - 1.0) < 1e-15);
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(s[n]) < 1e-15);

    // v = 0: exp((b z + b/2) t)
    const double b = 0.7, t = 1.5;
    auto sb = sigma_series({0.0, b, {}}, t, 6);
    for (int n = 0; n <= 6; ++n) {
        cplx expect = std::exp(b * t / 2) * std::pow(b * t, n) / std::tgamma(n + 1.0);
        CHECK(std::abs(sb[n] - expect) < 1e-13);
    }

    const double w = 0.4;
    auto sa = sigma_series({0.0, 0.0, {{std::numbers::pi, w}}}, t, 4);
    CHECK(std::abs(sa[0] - std::exp(2 * w * t)) < 1e-12);
}

TEST_CASE("moments: identity process and Brownian oracle") {
    auto id = moments({0.0, 0.0, {}}, 5.0, 8);
    for (auto m : id.m) CHECK(std::abs(m - 1.0) < 1e-14);

    auto bm = moments(CharTriplet::master_field(), 1.0, 12);
    CHECK(std::abs(bm.m[1] - std::exp(-0.5)) < 1e-12);
    CHECK(std::abs(bm.m[2]) < 1e-12);  // e^{-t}(1 - t) at t = 1
    for (double t : {0.3, 1.0, 2.5}) {
        auto mt = moments(CharTriplet::master_field(), t, 10);
        for (int n = 1; n <= 10; ++n) CHECK(std::abs(mt.m[n] - fubm_moment(n, t)) < 1e-10);
    }
    // drift rotates the n-th moment by e^{i n alpha t}
    auto drift = moments({0.8, 1.0, {}}, 0.6, 6);
    for (int n = 1; n <= 6; ++n)
        CHECK(std::abs(drift.m[n] - std::polar(1.0, n * 0.8 * 0.6) * fubm_moment(n, 0.6)) < 1e-10);
    // diffusivity b is a time change
    auto slow = moments({0.0, 0.5, {}}, 2.0, 6);
    for (int n = 1; n <= 6; ++n) CHECK(std::abs(slow.m[n] - fubm_moment(n, 1.0)) < 1e-10);
}

TEST_CASE("moments agree with Lagrange inversion for random triplets") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto tr = testing::random_triplet(rng);
        for (double t : {0.1, 0.7, 1.5}) {
            auto m = moments(tr, t, 10);
            auto oracle = lagrange_moments(tr, t, 10);
            for (int n = 1; n <= 10; ++n) CHECK(std::abs(m.m[n] - oracle[n]) < 1e-9);
        }
    }
}

TEST_CASE("moment invariants: first moment, unitarity, truncation, continuity") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto tr = testing::random_triplet(rng);
        for (double t : {0.1, 1.0, 3.0}) {
            auto m = moments(tr, t, 12);
            CHECK(m.m[0] == cplx(1.0));
            CHECK(std::abs(m.m[1] - first_moment(tr, t)) < 1e-10);
            for (int n = 1; n <= 12; ++n) CHECK(std::abs(m.m[n]) <= 1.0 + 1e-9);
            auto deeper = moments(tr, t, 20);
            for (int n = 1; n <= 10; ++n) CHECK(std::abs(m.m[n] - deeper.m[n]) < 1e-10);
            CHECK(m(-3) == std::conj(m.m[3]));
        }
        auto tiny = moments(tr, 1e-9, 6);
        for (int n = 1; n <= 6; ++n) CHECK(std::abs(tiny.m[n] - 1.0) < 1e-6);
    }
}

TEST_CASE("first_moment closed form") {
    CHECK(first_moment({1.0, 2.0, {{1.0, 0.5}}}, 0.0) == cplx(1.0));
    const double w = 0.3, t = 1.7;
    CHECK(std::abs(first_moment({0.0, 0.0, {{std::numbers::pi, w}}}, t) - std::exp(-2 * w * t)) < 1e-15);
    CHECK(std::abs(first_moment({0.4, 1.2, {}}, t) - std::exp(cplx(-0.6 * t, 0.4 * t))) < 1e-15);
}

TEST_CASE("triplet validation") {
    CHECK_THROWS_AS(CharTriplet({0.0, -1.0, {}}).validate(), DomainError);
    CHECK_THROWS_AS(CharTriplet({0.0, 1.0, {{0.0, 1.0}}}).validate(), DomainError);
    CHECK_THROWS_AS(CharTriplet({0.0, 1.0, {{1.0, 0.0}}}).validate(), DomainError);
    CHECK_THROWS_AS(CharTriplet({0.0, 1.0, {{4.0, 1.0}}}).validate(), DomainError);
    CHECK_NOTHROW(CharTriplet({0.0, 1.0, {{std::numbers::pi, 1.0}}}).validate());
}

TEST_CASE("Brownian support arc") {
    auto arc = bm_support(0.0, 1.0, 1.0);
    const double theta = std::sqrt(3.0) / 2.0 + std::numbers::pi / 3.0;
    CHECK(arc.theta == doctest::Approx(theta).epsilon(1e-14));
    CHECK(arc.theta == doctest::Approx(1.91322).epsilon(1e-5));
    CHECK(arc.seminorm_dist == doctest::Approx(2.0 * std::sin(theta / 2.0)).epsilon(1e-14));

    auto edge = bm_support(0.0, 2.0, 2.0);
    CHECK(edge.theta == doctest::Approx(std::numbers::pi));
    CHECK(edge.seminorm_dist == doctest::Approx(2.0));

    for (double t : {1e-4, 1e-6, 1e-8}) CHECK(bm_support(0.0, 1.0, t).theta / std::sqrt(t) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_THROWS_AS(bm_support(0.0, 1.0, 4.5), DomainError);
    CHECK(bm_support(0.5, 1.0, 1.0).theta == doctest::Approx(theta + 0.5));
}

TEST_CASE("semigroup: free product of increments") {
    // m_n(s+t) = tau((ab)^n) with a ~ a_s, b ~ a_t free
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        auto tr = testing::random_triplet(rng);
        for (double s : {0.5, 1.0})
            for (double t : {0.5, 1.0}) {
                Marginals marg = Marginals::from_levy(tr, {s, t}, 8);
                auto target = moments(tr, s + t, 8);
                for (int n = 1; n <= 6; ++n) {
                    std::vector<PowerLetter> ls;
                    for (int j = 0; j < n; ++j) {
                        ls.push_back({0, 1});
                        ls.push_back({1, 1});
                    }
                    CHECK(std::abs(word_moment(PowerWord(ls), marg) - target.m[n]) < 1e-9);
                }
            }
    }
}
