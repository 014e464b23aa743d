#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace freeholo {

using cplx = std::complex<double>;

/// Truncated power series c_0 + c_1 z + ... + c_K z^K with complex double coefficients.
///
/// All arithmetic is exact order by order: the coefficient of z^n in a result depends only
/// on the coefficients of degree <= n of the operands.
class PowerSeries {
public:
    explicit PowerSeries(std::size_t order = 0) : c_(order + 1, cplx{}) {}
    PowerSeries(std::size_t order, std::vector<cplx> coeffs);

    static PowerSeries constant(std::size_t order, cplx c);
    /// The series z.
    static PowerSeries variable(std::size_t order);

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx operator[](std::size_t n) const { return n < c_.size() ? c_[n] : cplx{}; }
    cplx& operator[](std::size_t n) { return c_[n]; }

    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    PowerSeries& operator*=(cplx s);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, cplx s) { return a *= s; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

    PowerSeries derivative() const;
    /// 1/f; requires f_0 != 0.
    PowerSeries reciprocal() const;
    /// exp(f) for any f_0.
    PowerSeries exp() const;
    /// f(g(z)); requires g_0 == 0.
    PowerSeries compose(const PowerSeries& g) const;
    /// Compositional inverse g with f(g(z)) = z; requires f_0 == 0 and f_1 != 0. Newton iteration.
    PowerSeries reversion() const;

private:
    std::vector<cplx> c_;
};

} // namespace freeholo
