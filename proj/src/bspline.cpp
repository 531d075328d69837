#include "splinex/bspline.hpp"

#include <cmath>
#include <stdexcept>

namespace splinex {

double bspline(int p, double t) {
    if (p < 0) throw std::invalid_argument("bspline: degree must be >= 0");
    if (p >= 1) t = std::abs(t);  // even function; folding keeps samples bit-symmetric
    // Shift to the uniform-knot parametrization x in [0, p+1).
    const double x = t + 0.5 * (p + 1);
    if (x < 0.0 || x >= p + 1) return 0.0;
    if (p == 0) return 1.0;  // right-continuous on [-1/2, 1/2)

    const int i = static_cast<int>(x);  // knot interval, 0 <= i <= p
    // Cox-de Boor on integer knots: raise the degree of the single active
    // order-0 function, keeping the p+1 candidates that can reach index 0.
    double n[64];
    if (p + 1 > 64) throw std::invalid_argument("bspline: degree too large");
    for (int j = 0; j <= p; ++j) n[j] = (j == i) ? 1.0 : 0.0;
    for (int r = 1; r <= p; ++r) {
        for (int j = 0; j + r <= p; ++j) {
            n[j] = ((x - j) * n[j] + (j + 1 + r - x) * n[j + 1]) / r;
        }
    }
    return n[0];
}

SampledSpline sample_spline(int p, int q) {
    if (q < 1) throw std::invalid_argument("sample_spline: q must be >= 1");
    SampledSpline s;
    s.p = p;
    s.q = q;
    if (p > 0) {
        const int Q = static_cast<int>(std::ceil(q * (p + 1) / 2.0 - 1.0));
        s.lo = -Q;
        s.hi = Q;
    } else {
        // indicator of [-1/2, 1/2): k/q in [-1/2, 1/2)
        s.lo = -(q / 2);
        s.hi = (q - 1) / 2;
    }
    s.values.resize(static_cast<size_t>(s.hi - s.lo + 1));
    for (int k = s.lo; k <= s.hi; ++k) {
        s.values[static_cast<size_t>(k - s.lo)] =
            bspline(p, static_cast<double>(k) / q);
    }
    return s;
}

double SampledSpline::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double PeriodizedBasis::eval(int k, double t) const {
    if (k < 0 || k >= N) throw std::invalid_argument("PeriodizedBasis::eval: index out of range");
    double u = t - std::floor(t);  // reduce mod 1
    // beta^p(N(u - l) - k) is nonzero for N(u - l) - k in the support,
    // i.e. for at most ceil((p+1)/N) + 1 lattice shifts l.
    const double radius = 0.5 * (p + 1);
    double sum = 0.0;
    const int lmin = static_cast<int>(std::floor((N * u - k - radius) / N));
    const int lmax = static_cast<int>(std::ceil((N * u - k + radius) / N));
    for (int l = lmin; l <= lmax; ++l) {
        sum += bspline(p, N * (u - l) - k);
    }
    return normalization == Normalization::L2scaled ? std::sqrt(double(N)) * sum : sum;
}

double characteristic_function(int order, double omega) {
    if (order < 1) throw std::invalid_argument("characteristic_function: order must be >= 1");
    const int deg = order - 1;
    // Integer samples of beta^deg vanish for |k| > (deg+1)/2.
    const int kmax = (deg + 1) / 2;
    double u = bspline(deg, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        u += 2.0 * bspline(deg, static_cast<double>(k)) * std::cos(omega * k);
    }
    return u;
}

}  // namespace splinex
