#include "splinex/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splinex {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
    size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// In-place iterative radix-2 Cooley-Tukey; n must be a power of two.
// sign = -1 forward, +1 backward (unscaled).
void fft_pow2(cvector& a, int sign) {
    const size_t n = a.size();
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cdouble wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cdouble u = a[i + j];
                cdouble v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein chirp transform for arbitrary n: X(k) = conj(b_k) (a (*) b)(k)
// with a_j = x_j conj(b_j), b_j = e^{i pi j^2 / n}, convolved circularly
// at a power-of-two length >= 2n-1.
cvector bluestein(const cvector& x, int sign) {
    const size_t n = x.size();
    const size_t m = next_pow2(2 * n - 1);
    cvector chirp(n);
    for (size_t j = 0; j < n; ++j) {
        // j^2 mod 2n keeps the phase argument small and exact
        const long long jj = static_cast<long long>(j) * static_cast<long long>(j) %
                             (2 * static_cast<long long>(n));
        const double ang = sign * kPi * static_cast<double>(jj) / static_cast<double>(n);
        chirp[j] = cdouble(std::cos(ang), std::sin(ang));
    }
    cvector a(m, cdouble(0)), b(m, cdouble(0));
    for (size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, +1);
    const double scale = 1.0 / static_cast<double>(m);
    cvector out(n);
    for (size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
    return out;
}

cvector transform(const cvector& x, int sign) {
    if (x.empty()) throw std::invalid_argument("dft: empty input");
    if (x.size() == 1) return x;
    if (is_pow2(x.size())) {
        cvector a = x;
        fft_pow2(a, sign);
        return a;
    }
    return bluestein(x, sign);
}

}  // namespace

cvector dft(const cvector& x) { return transform(x, -1); }

cvector idft(const cvector& x) {
    cvector a = transform(x, +1);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= scale;
    return a;
}

cvector dft_real(const std::vector<double>& x) {
    cvector a(x.size());
    for (size_t i = 0; i < x.size(); ++i) a[i] = cdouble(x[i], 0.0);
    return dft(a);
}

}  // namespace splinex
