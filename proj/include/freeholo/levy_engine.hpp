#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "freeholo/power_series.hpp"

namespace freeholo {

/// Atom of the Levy measure: weight w at the point exp(i angle) of the unit circle.
struct LevyAtom {
    double angle = 0.0;
    double weight = 0.0;
};

/// Characteristic triplet (alpha, b, v) of a free unitary Levy process, with v finitely atomic.
struct CharTriplet {
    double alpha = 0.0;
    double b = 0.0;
    std::vector<LevyAtom> atoms;

    /// Throws DomainError unless b >= 0, weights > 0, angles in (-pi, pi] and none at 0.
    void validate() const;
    /// sum_j w_j (cos phi_j - 1), the value of the integral of (Re zeta - 1) dv.
    double jump_real_part() const;
    /// sum_j w_j sin phi_j.
    double jump_imag_part() const;
    double total_jump_rate() const;

    static CharTriplet master_field() { return {0.0, 1.0, {}}; }
};

/// Moments m_0 = 1, m_1, .., m_K of a unitary element; m_{-n} = conj(m_n).
struct MomentSeries {
    double t = 0.0;
    std::vector<cplx> m;

    std::size_t depth() const { return m.empty() ? 0 : m.size() - 1; }
    /// Moment of any integer order within the depth; throws DomainError beyond it.
    cplx operator()(long n) const;
};

/// S-transform of a_t around 0, to order K.
PowerSeries sigma_series(const CharTriplet& triplet, double t, std::size_t order);

/// Moments of a_t up to order K by compositional inversion of z S(z)/(1+z).
MomentSeries moments(const CharTriplet& triplet, double t, std::size_t order);

/// Closed form tau(a_t) = exp(t (i alpha - b/2 + sum w_j (cos phi_j - 1))).
cplx first_moment(const CharTriplet& triplet, double t);

/// Half-width of the spectral arc of the free unitary Brownian motion with drift.
struct SupportArc {
    double theta = 0.0;
    double seminorm_dist = 0.0;  // ||a_t - 1|| = 2 sin(theta/2)
};

/// theta_t = |alpha| t + sqrt((4 - bt) bt)/2 + arccos(1 - bt/2); requires b > 0 and bt <= 4.
SupportArc bm_support(double alpha, double b, double t);

} // namespace freeholo
