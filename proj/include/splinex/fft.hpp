#pragma once

#include <complex>
#include <vector>

namespace splinex {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

/// Forward DFT, X(k) = sum_j x(j) e^{-2 pi i jk/n}, any length n >= 1.
/// Power-of-two lengths use an iterative radix-2 transform; all other
/// lengths go through the Bluestein chirp transform, so the cost is
/// O(n log n) for every n.
cvector dft(const cvector& x);

/// Inverse DFT; idft(dft(x)) == x up to rounding.
cvector idft(const cvector& x);

cvector dft_real(const std::vector<double>& x);

}  // namespace splinex
