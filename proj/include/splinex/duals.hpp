#pragma once

#include <Eigen/Core>
#include <optional>

#include "splinex/bspline.hpp"

namespace splinex {

/// Coefficients c of a Gram-based dual spline mother function,
/// dual_0 = sum_k c(k) phi_{N,k}, stored as a length-N periodic sequence.
/// kind:continuous is dual under the L^2(0,1) inner product, kind:discrete
/// under the oversampled grid pairing <f,g>_{N,q}.  c(k) = c(N-k).
struct DualCoefficients {
    enum class Kind { continuous, discrete };
    Kind kind = Kind::continuous;
    int p = 0;
    int q = 0;  ///< 0 for kind == continuous
    int N = 1;
    Eigen::VectorXd coeffs;  ///< length N, index k = 0..N-1

    /// Periodic accessor, c(k mod N).
    double at(long k) const {
        long m = k % N;
        if (m < 0) m += N;
        return coeffs[m];
    }
};

/// Finitely supported sequence on [-K, K] that is q-shift biorthogonal to
/// the sampled spline b_q: sum_k values(k) b_q(k - q l) = delta_0(l).
struct CompactDualSequence {
    int p = 0;
    int q = 2;
    int K = 0;
    Eigen::VectorXd values;  ///< length 2K+1, index k+K
    std::optional<double> norm_cap;  ///< M_abs constraint the solve honoured

    double value(int k) const {
        return (k < -K || k > K) ? 0.0 : values[k + K];
    }
};

/// Gram-based dual with its coefficient sequence cut to the minimal
/// symmetric window containing every |c(k)| >= eps.  band_radius counts
/// retained coefficient indices on each side of 0 (steps of 1/N).
struct TruncatedDual {
    DualCoefficients base;
    double eps = 0.0;
    int band_radius = 0;
};

/// First column of the circulant Gram matrix of the L2-scaled periodic
/// basis: the N-periodisation of beta^{2p+1} sampled at integers
/// (beta^p * beta^p = beta^{2p+1}).
Eigen::VectorXd continuous_gram_column(int p, int N);

/// First column of the circulant Gram matrix under <.,.>_{N,q}: the
/// N-periodisation of [b_q * b_q] downsampled by q.
Eigen::VectorXd discrete_gram_column(int p, int q, int N);

/// Coefficients of the dual basis under L^2(0,1): solves G_N c = e_0.
DualCoefficients continuous_dual_coeffs(int p, int N);

/// Coefficients of the dual basis under <.,.>_{N,q}.  Throws
/// SingularCirculant for (p,q) = (0,2), where the sampled-spline symbol
/// vanishes at omega = pi.
DualCoefficients discrete_dual_coeffs(int p, int q, int N);

/// Cut a dual coefficient sequence at threshold eps > 0: the minimal
/// symmetric window retaining every entry with |c(k)| >= eps.
TruncatedDual truncate_dual(const DualCoefficients& base, double eps);

/// Smallest K admitted by the compact-dual existence bound
/// K > (q(p-1)-2) / (2(q-1))  (ceiling of the bound first for p even).
int compact_dual_min_radius(int p, int q);

/// Construct a compactly supported discrete dual of b_q with support
/// [-K, K] by a minimum-norm least-squares solve of the finite
/// biorthogonality system.  If K is omitted the minimal admissible K is
/// used.  If norm_cap = M_abs is given, K is grown until
/// ||w||_inf <= M_abs / ||b_q||_inf or the retry limit is hit.
CompactDualSequence compact_dual(int p, int q,
                                 std::optional<int> K = std::nullopt,
                                 std::optional<double> norm_cap = std::nullopt);

/// Wrap-add a sequence seq(k), k in [-K, K] (index k+K), to period n.
Eigen::VectorXd periodize_sequence(const Eigen::VectorXd& seq, int n);

/// Values of the Gram-based dual mother function on the oversampled grid:
/// the qN-periodic sequence v(j) = sum_k c_N(k) b_q(j - qk), so that
/// Z(m, l) = v(j_m - q l).  Requires kind == discrete.
Eigen::VectorXd dual_grid_samples(const DualCoefficients& c);

/// Same, with the coefficient sequence truncated to the band.
Eigen::VectorXd dual_grid_samples(const TruncatedDual& t);

}  // namespace splinex
