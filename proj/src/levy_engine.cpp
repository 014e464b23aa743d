#include "freeholo/levy_engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "freeholo/free_group.hpp"

namespace freeholo {

void CharTriplet::validate() const {
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("b must be a finite nonnegative number");
    for (const auto& a : atoms) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight)) throw DomainError("atom weights must be positive");
        if (!(a.angle > -std::numbers::pi && a.angle <= std::numbers::pi))
            throw DomainError("atom angle " + std::to_string(a.angle) + " outside (-pi, pi]");
        if (a.angle == 0.0) throw DomainError("the Levy measure must not charge 1 (atom at angle 0)");
    }
}

double CharTriplet::jump_real_part() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight * (std::cos(a.angle) - 1.0);
    return s;
}

double CharTriplet::jump_imag_part() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight * std::sin(a.angle);
    return s;
}

double CharTriplet::total_jump_rate() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    return s;
}

cplx MomentSeries::operator()(long n) const {
    const std::size_t k = static_cast<std::size_t>(n < 0 ? -n : n);
    if (k >= m.size())
        throw DomainError("moment of order " + std::to_string(n) + " beyond series depth " + std::to_string(depth()));
    return n < 0 ? std::conj(m[k]) : m[k];
}

PowerSeries sigma_series(const CharTriplet& triplet, double t, std::size_t order) {
    triplet.validate();
    // log S(z) / t = -i alpha + b/2 + b z + sum_j w_j (i sin phi_j + (1-zeta_j)/(1 + z (1-zeta_j)))
    PowerSeries expo(order);
    expo[0] = cplx(triplet.b / 2.0, -triplet.alpha);
    if (order >= 1) expo[1] += triplet.b;
    for (const auto& a : triplet.atoms) {
        const cplx zeta = std::polar(1.0, a.angle);
        const cplx u = 1.0 - zeta;
        expo[0] += a.weight * cplx(0.0, std::sin(a.angle));
        // u / (1 + z u) = sum_n u^{n+1} (-z)^n
        cplx term = u;
        for (std::size_t n = 0; n <= order; ++n) {
            expo[n] += a.weight * term;
            term *= -u;
        }
    }
    expo *= t;
    return expo.exp();
}

MomentSeries moments(const CharTriplet& triplet, double t, std::size_t order) {
    if (order < 1) throw DomainError("moment order must be at least 1");
    MomentSeries out;
    out.t = t;
    if (t == 0.0) {
        out.m.assign(order + 1, cplx(1.0, 0.0));
        return out;
    }
    const PowerSeries s = sigma_series(triplet, t, order);
    // inverse of the moment function: z S(z) / (1 + z)
    PowerSeries inv_moment(order);
    cplx geometric = 1.0;
    PowerSeries one_over(order);
    for (std::size_t n = 0; n <= order; ++n) {
        one_over[n] = geometric;
        geometric = -geometric;
    }
    const PowerSeries zs = s * one_over;
    for (std::size_t n = 1; n <= order; ++n) inv_moment[n] = zs[n - 1];
    const PowerSeries psi = inv_moment.reversion();
    out.m.resize(order + 1);
    out.m[0] = 1.0;
    for (std::size_t n = 1; n <= order; ++n) out.m[n] = psi[n];
    return out;
}

cplx first_moment(const CharTriplet& triplet, double t) {
    return std::exp(t * cplx(triplet.jump_real_part() - triplet.b / 2.0, triplet.alpha));
}

SupportArc bm_support(double alpha, double b, double t) {
    if (!(b > 0.0) || !(t > 0.0)) throw DomainError("bm_support needs b > 0 and t > 0");
    const double bt = b * t;
    if (bt > 4.0) throw DomainError("support wraps the circle (bt > 4)");
    SupportArc arc;
    arc.theta = std::abs(alpha) * t + std::sqrt((4.0 - bt) * bt) / 2.0 + std::acos(1.0 - bt / 2.0);
    arc.seminorm_dist = 2.0 * std::sin(std::min(arc.theta, std::numbers::pi) / 2.0);
    return arc;
}

} // namespace freeholo
