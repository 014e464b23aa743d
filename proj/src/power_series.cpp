#include "freeholo/power_series.hpp"

#include <algorithm>
#include <stdexcept>

#include "freeholo/free_group.hpp"

namespace freeholo {

PowerSeries::PowerSeries(std::size_t order, std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    c_.resize(order + 1, cplx{});
}

PowerSeries PowerSeries::constant(std::size_t order, cplx c) {
    PowerSeries s(order);
    s.c_[0] = c;
    return s;
}

PowerSeries PowerSeries::variable(std::size_t order) {
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o[n];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o[n];
    return *this;
}

PowerSeries& PowerSeries::operator*=(cplx s) {
    for (auto& c : c_) c *= s;
    return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t K = std::min(a.order(), b.order());
    PowerSeries r(K);
    for (std::size_t i = 0; i <= K; ++i) {
        if (a.c_[i] == cplx{}) continue;
        for (std::size_t j = 0; i + j <= K; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

PowerSeries PowerSeries::derivative() const {
    PowerSeries d(order());
    for (std::size_t n = 1; n < c_.size(); ++n) d.c_[n - 1] = static_cast<double>(n) * c_[n];
    return d;
}

PowerSeries PowerSeries::reciprocal() const {
    if (c_[0] == cplx{}) throw DomainError("reciprocal of a series with zero constant term");
    const std::size_t K = order();
    PowerSeries r(K);
    r.c_[0] = 1.0 / c_[0];
    for (std::size_t n = 1; n <= K; ++n) {
        cplx acc{};
        for (std::size_t j = 1; j <= n; ++j) acc += c_[j] * r.c_[n - j];
        r.c_[n] = -acc * r.c_[0];
    }
    return r;
}

PowerSeries PowerSeries::exp() const {
    // g = exp(f) solves g' = f' g; n g_n = sum_{j=1..n} j f_j g_{n-j}
    const std::size_t K = order();
    PowerSeries g(K);
    g.c_[0] = std::exp(c_[0]);
    for (std::size_t n = 1; n <= K; ++n) {
        cplx acc{};
        for (std::size_t j = 1; j <= n; ++j) acc += static_cast<double>(j) * c_[j] * g.c_[n - j];
        g.c_[n] = acc / static_cast<double>(n);
    }
    return g;
}

PowerSeries PowerSeries::compose(const PowerSeries& g) const {
    if (g[0] != cplx{}) throw DomainError("inner series of a composition must vanish at 0");
    const std::size_t K = std::min(order(), g.order());
    // Horner: f(g) = c_0 + g (c_1 + g (c_2 + ...))
    PowerSeries r = constant(K, c_[K]);
    PowerSeries gk(K, g.coeffs());
    for (std::size_t n = K; n-- > 0;) {
        r = r * gk;
        r.c_[0] += c_[n];
    }
    return r;
}

PowerSeries PowerSeries::reversion() const {
    if (c_[0] != cplx{}) throw DomainError("reversion needs a series vanishing at 0");
    if (order() < 1 || std::abs(c_[1]) == 0.0) throw DomainError("reversion needs a nonzero linear coefficient");
    const std::size_t K = order();
    const PowerSeries df = derivative();
    const PowerSeries z = variable(K);
    PowerSeries g(K);
    g.c_[1] = 1.0 / c_[1];
    // each Newton step doubles the number of correct coefficients
    std::size_t correct = 2;
    while (correct <= K) {
        PowerSeries residual = compose(g) - z;
        PowerSeries slope = df.compose(g);
        g -= residual * slope.reciprocal();
        correct *= 2;
    }
    return g;
}

} // namespace freeholo
