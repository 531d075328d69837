#include "splinex/duals.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "splinex/circulant.hpp"
#include "splinex/errors.hpp"

namespace splinex {

Eigen::VectorXd continuous_gram_column(int p, int N) {
    if (N < 1) throw std::invalid_argument("continuous_gram_column: N must be >= 1");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(N);
    const int r = p + 1;  // beta^{2p+1}(k) = 0 for |k| > p+1
    for (int k = -r; k <= r; ++k) {
        const double v = bspline(2 * p + 1, static_cast<double>(k));
        if (v != 0.0) g[((k % N) + N) % N] += v;
    }
    return g;
}

Eigen::VectorXd discrete_gram_column(int p, int q, int N) {
    if (q < 1 || N < 1) throw std::invalid_argument("discrete_gram_column: bad sizes");
    const SampledSpline b = sample_spline(p, q);
    // full convolution b_q * b_q (not correlation: the p=0 window is
    // asymmetric for even q), then downsample at multiples of q
    const int clo = 2 * b.lo, chi = 2 * b.hi;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(N);
    for (int j = clo; j <= chi; ++j) {
        if (j % q != 0) continue;
        double s = 0.0;
        for (int l = b.lo; l <= b.hi; ++l) s += b.value(j - l) * b.value(l);
        if (s != 0.0) {
            const int k = j / q;
            g[((k % N) + N) % N] += s;
        }
    }
    return g;
}

namespace {

DualCoefficients dual_from_gram(Eigen::VectorXd gram_col, DualCoefficients::Kind kind,
                                int p, int q, int N) {
    Circulant G(std::move(gram_col));
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(N);
    e0[0] = 1.0;
    DualCoefficients d;
    d.kind = kind;
    d.p = p;
    d.q = q;
    d.N = N;
    d.coeffs = G.solve(e0);
    return d;
}

}  // namespace

DualCoefficients continuous_dual_coeffs(int p, int N) {
    return dual_from_gram(continuous_gram_column(p, N),
                          DualCoefficients::Kind::continuous, p, 0, N);
}

DualCoefficients discrete_dual_coeffs(int p, int q, int N) {
    return dual_from_gram(discrete_gram_column(p, q, N),
                          DualCoefficients::Kind::discrete, p, q, N);
}

TruncatedDual truncate_dual(const DualCoefficients& base, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("truncate_dual: eps must be > 0");
    const int N = base.N;
    int radius = 0;
    for (int k = 1; k <= N / 2; ++k) {
        if (std::abs(base.at(k)) >= eps || std::abs(base.at(-k)) >= eps) radius = k;
    }
    return TruncatedDual{base, eps, radius};
}

int compact_dual_min_radius(int p, int q) {
    if (q < 2) throw std::invalid_argument("compact_dual_min_radius: q must be > 1");
    double bound = (q * (p - 1) - 2.0) / (2.0 * (q - 1));
    if (p % 2 == 0) bound = std::ceil(bound);
    // smallest integer strictly greater than the bound, never negative
    int K = static_cast<int>(std::floor(bound)) + 1;
    return K < 0 ? 0 : K;
}

CompactDualSequence compact_dual(int p, int q, std::optional<int> K_opt,
                                 std::optional<double> norm_cap) {
    if (q < 2) throw std::invalid_argument("compact_dual: q must be > 1");
    const SampledSpline b = sample_spline(p, q);
    const int Q = b.support_radius();
    const int K_min = K_opt ? *K_opt : compact_dual_min_radius(p, q);
    const int K_limit = norm_cap ? std::max(10 * std::max(K_min, 1), K_min) : K_min;
    const double rel_cap = norm_cap ? (*norm_cap / b.max_abs())
                                    : std::numeric_limits<double>::infinity();

    for (int K = K_min; K <= K_limit; ++K) {
        const int L = (K + Q) / q;
        Eigen::MatrixXd B(2 * L + 1, 2 * K + 1);
        for (int l = -L; l <= L; ++l)
            for (int k = -K; k <= K; ++k) B(l + L, k + K) = b.value(k - q * l);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * L + 1);
        rhs[L] = 1.0;

        // minimum-norm least-squares solution of the underdetermined system
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(B);
        cod.setThreshold(1e-12);
        Eigen::VectorXd w = cod.solve(rhs);
        if ((B * w - rhs).lpNorm<Eigen::Infinity>() > 1e-10) {
            throw NoCompactDual("compact dual system is infeasible at K=" + std::to_string(K));
        }
        if (w.lpNorm<Eigen::Infinity>() <= rel_cap) {
            CompactDualSequence d;
            d.p = p;
            d.q = q;
            d.K = K;
            d.values = std::move(w);
            d.norm_cap = norm_cap;
            return d;
        }
    }
    throw NormCapUnreachable("norm cap " + std::to_string(*norm_cap) +
                             " not reachable within support limit");
}

Eigen::VectorXd periodize_sequence(const Eigen::VectorXd& seq, int n) {
    if (n < 1) throw std::invalid_argument("periodize_sequence: period must be >= 1");
    if (seq.size() % 2 == 0) throw std::invalid_argument("periodize_sequence: length must be odd");
    const int K = static_cast<int>(seq.size() / 2);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int k = -K; k <= K; ++k) out[((k % n) + n) % n] += seq[k + K];
    return out;
}

Eigen::VectorXd dual_grid_samples(const DualCoefficients& c) {
    if (c.kind != DualCoefficients::Kind::discrete)
        throw std::invalid_argument("dual_grid_samples: discrete dual required");
    const SampledSpline b = sample_spline(c.p, c.q);
    const int L = c.q * c.N;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(L);
    for (int k = 0; k < c.N; ++k) {
        const double ck = c.coeffs[k];
        if (ck == 0.0) continue;
        for (int j = b.lo; j <= b.hi; ++j) {
            v[(((c.q * k + j) % L) + L) % L] += ck * b.value(j);
        }
    }
    return v;
}

Eigen::VectorXd dual_grid_samples(const TruncatedDual& t) {
    const DualCoefficients& c = t.base;
    if (c.kind != DualCoefficients::Kind::discrete)
        throw std::invalid_argument("dual_grid_samples: discrete dual required");
    const SampledSpline b = sample_spline(c.p, c.q);
    const int L = c.q * c.N;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(L);
    for (int k = -t.band_radius; k <= t.band_radius; ++k) {
        const double ck = c.at(k);
        for (int j = b.lo; j <= b.hi; ++j) {
            v[(((c.q * k + j) % L) + L) % L] += ck * b.value(j);
        }
    }
    return v;
}

}  // namespace splinex
