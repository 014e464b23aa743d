#include "freeholo/levy_sim.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace freeholo {

namespace {

std::atomic<bool> drift_warned{false};

double spectral_norm_estimate(const Matrix& X) {
    // power iteration on X* X; a few steps are enough to size the Taylor degree
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(X.rows()) / std::sqrt(static_cast<double>(X.rows()));
    double lambda = 0.0;
    for (int it = 0; it < 8; ++it) {
        Eigen::VectorXcd w = X.adjoint() * (X * v);
        const double n = w.norm();
        if (n == 0.0) return 0.0;
        lambda = n;
        v = w / n;
    }
    return std::sqrt(lambda);
}

Eigen::VectorXcd gaussian_vector(int N, Rng& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(N);
    for (int i = 0; i < N; ++i) v(i) = cplx(g(rng), g(rng));
    return v;
}

} // namespace

void SimConfig::validate() const {
    if (N < 1) throw DomainError("N must be at least 1");
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (samples < 1) throw DomainError("samples must be at least 1");
    if (reunitarize_every < 1) throw DomainError("reunitarize_every must be at least 1");
    triplet.validate();
}

Matrix haar_unitary(int N, Rng& rng) {
    std::normal_distribution<double> g;
    Matrix Z(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) Z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
    Eigen::HouseholderQR<Matrix> qr(Z);
    Matrix Q = qr.householderQ();
    const Matrix& R = qr.matrixQR();
    for (int j = 0; j < N; ++j) {
        const cplx d = R(j, j);
        Q.col(j) *= d / std::abs(d);
    }
    return Q;
}

Matrix gauss_skew(int N, Rng& rng) {
    std::normal_distribution<double> g;
    Matrix X(N, N);
    const double sd = 1.0 / std::sqrt(static_cast<double>(N));
    const double so = 1.0 / std::sqrt(2.0 * N);
    for (int k = 0; k < N; ++k) {
        X(k, k) = cplx(0.0, g(rng) * sd);
        for (int l = k + 1; l < N; ++l) {
            const double a = g(rng), b = g(rng);
            X(k, l) = cplx(a, b) * so;
            X(l, k) = cplx(-a, b) * so;
        }
    }
    return X;
}

Matrix small_expm(const Matrix& X, double tol) {
    const int N = static_cast<int>(X.rows());
    const double rho = 1.2 * spectral_norm_estimate(X);
    // smallest degree m with rho^{m+1}/(m+1)! e^rho < tol
    int m = 1;
    double term = rho * rho / 2.0;
    while (term * std::exp(rho) >= tol && m < 40) {
        ++m;
        term *= rho / (m + 1);
    }
    // Paterson-Stockmeyer: Horner in X^s over blocks of s coefficients, s minimizing products
    int s = 1;
    for (int cand = 1, best = m; cand <= m; ++cand) {
        const int cost = cand - 1 + (m + cand) / cand - 1;
        if (cost < best) {
            best = cost;
            s = cand;
        }
    }
    std::vector<Matrix> P(s + 1);
    P[0] = Matrix::Identity(N, N);
    P[1] = X;
    for (int j = 2; j <= s; ++j) P[j].noalias() = P[j - 1] * X;
    std::vector<double> c(m + 1);
    c[0] = 1.0;
    for (int k = 1; k <= m; ++k) c[k] = c[k - 1] / k;
    const int blocks = (m + s) / s;
    auto block = [&](int b) {
        Matrix B = Matrix::Zero(N, N);
        for (int j = 0; j < s && b * s + j <= m; ++j) B += c[b * s + j] * P[j];
        return B;
    };
    Matrix acc = block(blocks - 1);
    for (int b = blocks - 2; b >= 0; --b) {
        Matrix next = block(b);
        next.noalias() += acc * P[s];
        acc.swap(next);
    }
    return acc;
}

void reunitarize(Matrix& U) {
    const int N = static_cast<int>(U.rows());
    const Matrix I = Matrix::Identity(N, N);
    for (int it = 0; it < 6; ++it) {
        Matrix G = U.adjoint() * U;
        const double err = (G - I).cwiseAbs().maxCoeff();
        if (it == 0 && err > 1e-6 && !drift_warned.exchange(true))
            std::cerr << "warning: unitarity drift " << err << " before projection\n";
        if (err < 1e-15) break;
        U = U * (1.5 * I - 0.5 * G);
    }
}

Matrix levy_increment(const SimConfig& cfg, double t, Rng& rng) {
    if (!(t > 0.0)) throw DomainError("increment time must be positive");
    const auto& tr = cfg.triplet;
    const int N = cfg.N;
    const long steps = std::max(1L, static_cast<long>(std::ceil(t / cfg.dt - 1e-9)));
    const double h = t / static_cast<double>(steps);
    const double bh = tr.b * h;
    // variance matched so that E (1/N) tr exp(sqrt(beta) Xi) = e^{-bh/2} up to O(h^3)
    const double beta = bh - bh * bh * (1.0 - 1.0 / (static_cast<double>(N) * N)) / 12.0;
    const cplx phase = std::exp(cplx(0.0, (tr.alpha - tr.jump_imag_part()) * h));

    const double rate = static_cast<double>(N) * tr.total_jump_rate() * h;
    std::poisson_distribution<long> jumps(rate > 0.0 ? rate : 1.0);
    std::vector<double> weights;
    for (const auto& a : tr.atoms) weights.push_back(a.weight);
    std::discrete_distribution<int> atom(weights.begin(), weights.end());

    Matrix U = Matrix::Identity(N, N);
    Matrix tmp(N, N);
    for (long s = 0; s < steps; ++s) {
        if (tr.b > 0.0) {
            const Matrix E = small_expm(std::sqrt(beta) * gauss_skew(N, rng), 1e-9);
            tmp.noalias() = U * E;
            U.swap(tmp);
        }
        U *= phase;
        // jumps g diag(zeta,1,..) g* = I + (zeta - 1) v v*, v uniform on the sphere
        const long count = rate > 0.0 ? jumps(rng) : 0;
        for (long j = 0; j < count; ++j) {
            Eigen::VectorXcd v = gaussian_vector(N, rng);
            v.normalize();
            const cplx zeta = std::polar(1.0, tr.atoms[atom(rng)].angle);
            const Eigen::VectorXcd Uv = U * v;
            U.noalias() += (zeta - 1.0) * Uv * v.adjoint();
        }
        if ((s + 1) % cfg.reunitarize_every == 0 && s + 1 < steps) reunitarize(U);
    }
    reunitarize(U);
    return U;
}

cplx sample_holonomy_trace(const HolonomyContext& ctx, const FreeWord& w, const SimConfig& cfg, Rng& rng) {
    const int k = ctx.generators();
    std::vector<bool> used(k, false);
    for (const auto& l : w.letters()) used[l.gen] = true;
    std::vector<Matrix> H(k);
    for (int i = 0; i < k; ++i)
        if (used[i]) H[i] = levy_increment(cfg, ctx.areas()[i], rng);
    // h_{l1 l2} = h_{l2} h_{l1}: multiply along the reversed word
    Matrix M = Matrix::Identity(cfg.N, cfg.N);
    Matrix tmp(cfg.N, cfg.N);
    const FreeWord op = w.reversed();
    for (const auto& l : op.letters()) {
        if (l.exp > 0)
            tmp.noalias() = M * H[l.gen];
        else
            tmp.noalias() = M * H[l.gen].adjoint();
        M.swap(tmp);
    }
    return M.trace() / static_cast<double>(cfg.N);
}

Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return Rng(z);
}

namespace {

// runs f(i, rng_i) for i < n over a thread pool; each index owns its generator
void for_each_sample(const SimConfig& cfg, const std::function<void(long, Rng&)>& f) {
    const long n = cfg.samples;
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = static_cast<int>(std::clamp<long>(threads, 1, n));
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (long i; !failed && (i = next.fetch_add(1)) < n;) {
            try {
                Rng rng = sample_rng(cfg.seed, static_cast<std::uint64_t>(i));
                f(i, rng);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace

TraceStats sample_stats(const std::function<cplx(Rng&)>& f, const SimConfig& cfg, cplx exact) {
    cfg.validate();
    const long n = cfg.samples;
    std::vector<cplx> values(n);
    for_each_sample(cfg, [&](long i, Rng& rng) { values[i] = f(rng); });

    TraceStats st;
    st.samples = n;
    st.exact = exact;
    cplx sum{};
    for (const auto& v : values) sum += v;
    st.mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0;
        for (const auto& v : values) ss += std::norm(v - st.mean);
        st.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    const double dev = std::abs(st.mean - exact);
    st.sigmas = st.std_error > 0.0 ? dev / st.std_error : (dev == 0.0 ? 0.0 : INFINITY);
    return st;
}

TraceStats mc_compare(const HolonomyContext& ctx, const FreeWord& w, const SimConfig& cfg) {
    return sample_stats([&](Rng& rng) { return sample_holonomy_trace(ctx, w, cfg, rng); }, cfg, ctx.trace_of_word(w));
}

TraceStats mc_compare(const HolonomyContext& ctx, const Loop& loop, const SimConfig& cfg) {
    return mc_compare(ctx, ctx.decompose(loop), cfg);
}

std::vector<double> eigen_angles(const Matrix& U) {
    Eigen::ComplexEigenSolver<Matrix> es(U, false);
    std::vector<double> out;
    for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::arg(es.eigenvalues()(i)));
    return out;
}

std::vector<double> sample_spectrum(const SimConfig& cfg, double t) {
    cfg.validate();
    std::vector<std::vector<double>> per(cfg.samples);
    for_each_sample(cfg, [&](long i, Rng& rng) { per[i] = eigen_angles(levy_increment(cfg, t, rng)); });
    std::vector<double> all;
    for (const auto& p : per) all.insert(all.end(), p.begin(), p.end());
    return all;
}

SupportReport spectral_support_check(const SimConfig& cfg, double t) {
    if (!cfg.triplet.atoms.empty()) throw DomainError("spectral support check needs a triplet without jumps");
    SupportReport rep;
    if (cfg.triplet.b > 0.0) rep.theta = bm_support(cfg.triplet.alpha, cfg.triplet.b, t).theta;
    rep.angles = sample_spectrum(cfg, t);
    const double centre = cfg.triplet.alpha * t;
    long out = 0;
    for (double a : rep.angles) {
        const double d = std::remainder(a - centre, 2.0 * std::numbers::pi);
        if (std::abs(d) > rep.theta + 1e-9) ++out;
    }
    rep.eigenvalues = static_cast<long>(rep.angles.size());
    rep.outlier_fraction = rep.eigenvalues ? static_cast<double>(out) / static_cast<double>(rep.eigenvalues) : 0.0;
    return rep;
}

} // namespace freeholo
