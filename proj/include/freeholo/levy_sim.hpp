#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "freeholo/holonomy.hpp"
#include "freeholo/levy_engine.hpp"

namespace freeholo {

using Matrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

struct SimConfig {
    int N = 8;
    CharTriplet triplet;
    double dt = 1.0 / 50;       // diffusion step
    long samples = 100;
    std::uint64_t seed = 1;
    int reunitarize_every = 50;
    int threads = 0;            // 0: hardware concurrency

    void validate() const;
};

/// Haar unitary: QR of a complex Gaussian matrix with the phases of R's diagonal moved into Q.
Matrix haar_unitary(int N, Rng& rng);

/// Standard Gaussian skew-Hermitian matrix for the inner product <X,Y> = N Tr(X* Y).
Matrix gauss_skew(int N, Rng& rng);

/// exp(X) for a matrix of small norm, by a Taylor polynomial with truncation below `tol`.
Matrix small_expm(const Matrix& X, double tol = 1e-14);

/// Sample of Y_t for the U(N) Levy process with triplet (i alpha I, b I, v_N).
Matrix levy_increment(const SimConfig& cfg, double t, Rng& rng);

/// Polar projection back to U(N) by Newton-Schulz steps.
void reunitarize(Matrix& U);

/// (1/N) Tr of the holonomy of the loop with word w: independent increments per face.
cplx sample_holonomy_trace(const HolonomyContext& ctx, const FreeWord& w, const SimConfig& cfg, Rng& rng);

struct TraceStats {
    cplx mean;
    double std_error = 0.0;
    long samples = 0;
    cplx exact;
    double sigmas = 0.0;
};

/// Per-sample generator, seeded from (seed, index) so results do not depend on the thread count.
Rng sample_rng(std::uint64_t seed, std::uint64_t index);

/// Runs f on cfg.samples independent streams and summarizes mean and standard error.
TraceStats sample_stats(const std::function<cplx(Rng&)>& f, const SimConfig& cfg, cplx exact);

/// Monte Carlo estimate of tau(h_l) against master_trace.
TraceStats mc_compare(const HolonomyContext& ctx, const FreeWord& w, const SimConfig& cfg);
TraceStats mc_compare(const HolonomyContext& ctx, const Loop& loop, const SimConfig& cfg);

/// Eigenvalue angles in (-pi, pi] of a unitary matrix.
std::vector<double> eigen_angles(const Matrix& U);

struct SupportReport {
    double theta = 0.0;             // half-width of the limiting arc around alpha t
    double outlier_fraction = 0.0;  // angles with |angle - alpha t| > theta
    long eigenvalues = 0;
    std::vector<double> angles;
};

/// Eigenvalue angles of cfg.samples draws of Y_t against the free unitary Brownian arc.
/// Requires b > 0, bt <= 4 and no jumps; b = 0 gives the deterministic rotation (theta = 0).
SupportReport spectral_support_check(const SimConfig& cfg, double t);

/// Eigenvalue angles of cfg.samples draws of Y_t for any triplet.
std::vector<double> sample_spectrum(const SimConfig& cfg, double t);

} // namespace freeholo
