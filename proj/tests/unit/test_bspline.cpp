#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "splinex/bspline.hpp"

using namespace splinex;

namespace {

// Independent oracle: iterate beta^k = beta^{k-1} * beta^0 numerically.
// beta^1 is seeded exactly (the hat function); each further order is the
// moving integral over [t-1/2, t+1/2], evaluated with a cumulative
// trapezoid on a fine grid whose nodes contain all spline knots.
struct ConvolutionOracle {
    static constexpr int nsub = 8192;  // points per unit
    double t0;
    std::vector<double> f;

    explicit ConvolutionOracle(int p) {
        const double half_width = 0.5 * (p + 1) + 0.5;
        t0 = -half_width;
        const size_t n = static_cast<size_t>(2 * half_width * nsub) + 1;
        f.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const double t = t0 + static_cast<double>(i) / nsub;
            f[i] = std::max(0.0, 1.0 - std::abs(t));  // beta^1
        }
        for (int k = 2; k <= p; ++k) raise_order();
    }

    void raise_order() {
        const double h = 1.0 / nsub;
        std::vector<double> cum(f.size(), 0.0);
        for (size_t i = 1; i < f.size(); ++i)
            cum[i] = cum[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        std::vector<double> g(f.size(), 0.0);
        const long half = nsub / 2;
        for (size_t i = 0; i < f.size(); ++i) {
            const long lo = static_cast<long>(i) - half, hi = static_cast<long>(i) + half;
            const double clo = lo < 0 ? 0.0 : cum[static_cast<size_t>(lo)];
            const double chi =
                hi >= static_cast<long>(f.size()) ? cum.back() : cum[static_cast<size_t>(hi)];
            g[i] = chi - clo;
        }
        f = std::move(g);
    }

    double value(size_t i) const { return f[i]; }
    double t_of(size_t i) const { return t0 + static_cast<double>(i) / nsub; }
};

}  // namespace

TEST_CASE("bspline: low order closed-form values") {
    CHECK(bspline(0, 0.0) == 1.0);
    CHECK(bspline(0, -0.5) == 1.0);  // right-continuous convention
    CHECK(bspline(0, 0.5) == 0.0);
    CHECK(bspline(1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bspline(1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bspline(1, -0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bspline(3, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(bspline(3, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(bspline(3, 0.5) == doctest::Approx(23.0 / 48.0).epsilon(1e-15));
    // zero outside the support
    CHECK(bspline(3, 2.0) == 0.0);
    CHECK(bspline(3, -2.0001) == 0.0);
    CHECK(bspline(5, 3.0) == 0.0);
}

TEST_CASE("bspline: agrees with the convolution oracle") {
    for (int p = 2; p <= 5; ++p) {
        ConvolutionOracle oracle(p);
        double worst = 0.0;
        for (size_t i = 0; i < oracle.f.size(); i += 97) {
            worst = std::max(worst, std::abs(bspline(p, oracle.t_of(i)) - oracle.value(i)));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("bspline: partition of unity") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int p = 0; p <= 5; ++p) {
        for (int trial = 0; trial < 1000; ++trial) {
            const double t = uni(rng);
            double sum = 0.0;
            for (int k = -8; k <= 8; ++k) sum += bspline(p, t - k);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("sample_spline: windows and values") {
    const SampledSpline s32 = sample_spline(3, 2);
    CHECK(s32.support_radius() == 3);
    const double expect[] = {1.0 / 48, 1.0 / 6, 23.0 / 48, 2.0 / 3, 23.0 / 48, 1.0 / 6, 1.0 / 48};
    for (int k = -3; k <= 3; ++k) CHECK(s32.value(k) == doctest::Approx(expect[k + 3]).epsilon(1e-15));
    CHECK(s32.value(4) == 0.0);

    const SampledSpline s11 = sample_spline(1, 1);
    CHECK(s11.support_radius() == 0);
    CHECK(s11.value(0) == 1.0);

    const SampledSpline s03 = sample_spline(0, 3);
    CHECK(s03.lo == -1);
    CHECK(s03.hi == 1);
    for (int k = -1; k <= 1; ++k) CHECK(s03.value(k) == 1.0);

    // asymmetric window for p = 0, even q
    const SampledSpline s02 = sample_spline(0, 2);
    CHECK(s02.lo == -1);
    CHECK(s02.hi == 0);
    const SampledSpline s04 = sample_spline(0, 4);
    CHECK(s04.lo == -2);
    CHECK(s04.hi == 1);
}

TEST_CASE("sample_spline: values equal bspline at k/q") {
    for (int p = 0; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            const SampledSpline s = sample_spline(p, q);
            for (int k = s.lo - 1; k <= s.hi + 1; ++k)
                CHECK(s.value(k) == bspline(p, static_cast<double>(k) / q));
        }
}

TEST_CASE("sample_spline: support radius formula for p > 0") {
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= 5; ++q) {
            const SampledSpline s = sample_spline(p, q);
            const int Q = static_cast<int>(std::ceil(q * (p + 1) / 2.0 - 1.0));
            CHECK(s.lo == -Q);
            CHECK(s.hi == Q);
            CHECK(s.value(Q) > 0.0);
            CHECK(s.value(Q + 1) == 0.0);
            for (int k = 0; k <= Q; ++k) CHECK(s.value(k) == s.value(-k));
        }
}

TEST_CASE("periodized basis evaluation") {
    PeriodizedBasis b{1, 4, Normalization::L2scaled};
    CHECK(b.eval(0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.eval(0, 1.0) == doctest::Approx(b.eval(0, 0.0)).epsilon(1e-15));  // 1-periodic

    PeriodizedBasis c{3, 8, Normalization::sampleScaled};
    // wrap-around translate: beta^3(8/16 - 7 + 8) = beta^3(1.5) = 1/48
    CHECK(c.eval(7, 1.0 / 16.0) == doctest::Approx(1.0 / 48.0).epsilon(1e-13));

    // direct lattice sum oracle
    auto direct = [](int p, int N, int k, double t, bool l2) {
        double sum = 0.0;
        for (int l = -6; l <= 6; ++l) sum += bspline(p, N * (t - l) - k);
        return l2 ? std::sqrt(double(N)) * sum : sum;
    };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double t = uni(rng);
        const int k = trial % 8;
        PeriodizedBasis d{2, 8, Normalization::sampleScaled};
        CHECK(d.eval(k, t) == doctest::Approx(direct(2, 8, k, t, false)).epsilon(1e-12));
    }
}

TEST_CASE("characteristic function: closed forms") {
    for (double w : {0.0, 0.3, 1.0, 2.5, 3.14}) {
        CHECK(characteristic_function(2, w) == doctest::Approx(1.0).epsilon(1e-15));
        const double c = std::cos(w / 2);
        CHECK(characteristic_function(4, w) ==
              doctest::Approx((1 + 2 * c * c) / 3.0).epsilon(1e-14));
        CHECK(characteristic_function(5, w) ==
              doctest::Approx((5 + 18 * c * c + c * c * c * c) / 24.0).epsilon(1e-14));
    }
    CHECK(characteristic_function(4, 0.0) == doctest::Approx(1.0));
    CHECK(characteristic_function(5, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("characteristic function: positive, and B_1 decreasing on [0, pi]") {
    // B_1(omega) for degree p equals the order p+1 characteristic function.
    // For p = 1 the samples are delta_0, so B_1 == 1 identically; strict
    // decrease starts at p = 2.
    for (int i = 0; i < 1000; ++i)
        CHECK(characteristic_function(2, 3.14159265358979323846 * i / 999.0) == 1.0);
    for (int p = 2; p <= 5; ++p) {
        double prev = characteristic_function(p + 1, 0.0);
        CHECK(prev > 0.0);
        for (int i = 1; i < 1000; ++i) {
            const double w = 3.14159265358979323846 * i / 999.0;
            const double cur = characteristic_function(p + 1, w);
            CHECK(cur > 0.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}
