#pragma once

#include <vector>

namespace splinex {

/// Evaluate the centred cardinal B-spline of degree p at t.
///
/// beta^0 is the characteristic function of [-1/2, 1/2) and
/// beta^p = beta^{p-1} * beta^0 (convolution).  The support is
/// [-(p+1)/2, (p+1)/2].  Evaluation uses the Cox-de Boor recursion on
/// uniform knots; values are exact piecewise polynomials.
double bspline(int p, double t);

/// Integer samples b_q(k) = beta^p(k/q) of the degree-p B-spline on a
/// grid oversampled by the factor q.
///
/// For p > 0 the support is the symmetric window [-Q, Q] with
/// Q = ceil(q(p+1)/2 - 1).  For p = 0 the window is [-floor(q/2), hi]
/// with hi = (q-1)/2 rounded down, which is asymmetric for even q.
struct SampledSpline {
    int p = 0;
    int q = 1;
    int lo = 0;               ///< first index with a stored value
    int hi = 0;               ///< last index with a stored value
    std::vector<double> values;  ///< values[k - lo] = b_q(k)

    /// b_q(k), zero outside [lo, hi].
    double value(int k) const {
        return (k < lo || k > hi) ? 0.0 : values[static_cast<size_t>(k - lo)];
    }
    /// Support radius Q = max(|lo|, hi).
    int support_radius() const { return hi > -lo ? hi : -lo; }
    /// Largest sample magnitude (= b_q(0) by unimodality).
    double max_abs() const;
};

SampledSpline sample_spline(int p, int q);

enum class Normalization {
    L2scaled,     ///< factor N^{1/2}; unit L^2 norm on [0,1]
    sampleScaled  ///< factor 1; point samples independent of N
};

/// One-periodic spline basis of N translates of the periodised mother
/// function of beta^p, with translate k shifted by k/N.
struct PeriodizedBasis {
    int p = 0;
    int N = 1;
    Normalization normalization = Normalization::L2scaled;

    /// phi^p_{N,k}(t): sum of beta^p(N(t - l) - k) over the lattice,
    /// scaled according to the normalization.  t is reduced mod 1 first;
    /// only the few lattice shifts meeting the support are summed.
    double eval(int k, double t) const;
};

/// Characteristic function u^m(omega) = sum_k beta^{m-1}(k) e^{-i omega k}
/// of the spline space of order m (degree m-1).  It is a real cosine
/// polynomial, strictly positive for every order; u^2 == 1 identically.
double characteristic_function(int order, double omega);

}  // namespace splinex
