#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "splinex/circulant.hpp"
#include "splinex/errors.hpp"
#include "splinex/fft.hpp"

using namespace splinex;

namespace {

// O(n^2) direct-summation reference
cvector dft_direct(const cvector& x) {
    const size_t n = x.size();
    cvector out(n, cdouble(0));
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * 3.14159265358979323846 * double(j) * double(k) / double(n);
            out[k] += x[j] * cdouble(std::cos(ang), std::sin(ang));
        }
    return out;
}

cvector random_signal(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    cvector x(n);
    for (auto& v : x) v = cdouble(uni(rng), uni(rng));
    return x;
}

Eigen::MatrixXd dense_circulant(const Eigen::VectorXd& col) {
    const Eigen::Index n = col.size();
    Eigen::MatrixXd C(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) C(i, j) = col[(i - j + n) % n];
    return C;
}

}  // namespace

TEST_CASE("dft: delta and constant") {
    cvector delta{{1, 0}, {0, 0}, {0, 0}, {0, 0}};
    cvector d = dft(delta);
    for (const auto& v : d) CHECK(std::abs(v - cdouble(1, 0)) < 1e-15);

    cvector ones(4, cdouble(1, 0));
    cvector o = dft(ones);
    CHECK(std::abs(o[0] - cdouble(4, 0)) < 1e-14);
    for (size_t k = 1; k < 4; ++k) CHECK(std::abs(o[k]) < 1e-14);
}

TEST_CASE("dft: matches direct summation, mixed lengths") {
    for (size_t n : {2u, 5u, 8u, 12u, 13u, 46u, 64u, 129u}) {
        cvector x = random_signal(n, 1000 + n);
        cvector fast = dft(x);
        cvector slow = dft_direct(x);
        for (size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-10 * double(n));
    }
}

TEST_CASE("dft: round trip") {
    for (size_t n : {1u, 2u, 3u, 12u, 16u, 46u, 129u, 1000u}) {
        cvector x = random_signal(n, n);
        cvector y = idft(dft(x));
        double norm = 0, err = 0;
        for (size_t i = 0; i < n; ++i) {
            norm += std::norm(x[i]);
            err += std::norm(y[i] - x[i]);
        }
        CHECK(std::sqrt(err) < 1e-12 * std::sqrt(norm));
    }
}

TEST_CASE("circulant: apply") {
    // identity
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(8);
    e0[0] = 1.0;
    Circulant id(e0);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(8, 0, 7);
    CHECK((id.apply(x) - x).lpNorm<Eigen::Infinity>() < 1e-13);

    // shift: first column delta_1 -> cyclic shift down
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(8);
    e1[1] = 1.0;
    Circulant shift(e1);
    Eigen::VectorXd y = shift.apply(x);
    for (int i = 0; i < 8; ++i) CHECK(y[i] == doctest::Approx(x[(i + 7) % 8]).epsilon(1e-13));

    // random vs dense oracle, n = 20
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uni(-1, 1);
    Eigen::VectorXd col(20), v(20);
    for (int i = 0; i < 20; ++i) col[i] = uni(rng), v[i] = uni(rng);
    Circulant c(col);
    Eigen::VectorXd dense = dense_circulant(col) * v;
    CHECK((c.apply(v) - dense).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("circulant: solve") {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(6);
    e0[0] = 1.0;
    Circulant id(e0);
    Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(6, 1, 6);
    CHECK((id.solve(b) - b).lpNorm<Eigen::Infinity>() < 1e-13);

    // periodised linear-spline Gram: first column [4,1,0,...,0,1]/6
    Eigen::VectorXd g = Eigen::VectorXd::Zero(16);
    g[0] = 4.0 / 6.0;
    g[1] = 1.0 / 6.0;
    g[15] = 1.0 / 6.0;
    Circulant gram(g);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(16);
    rhs[0] = 1.0;
    Eigen::VectorXd x = gram.solve(rhs);
    Eigen::VectorXd x_dense = dense_circulant(g).lu().solve(rhs);
    CHECK((x - x_dense).lpNorm<Eigen::Infinity>() < 1e-10);

    // residual check
    CHECK((gram.apply(x) - rhs).norm() < 1e-10 * rhs.norm());
}

TEST_CASE("circulant: singular symbol raises") {
    // (p,q) = (0,2) sampled-spline autocorrelation symbol e^{-iw} + 1
    // vanishes at w = pi; the circulant [1, 0, ..., 0, 1] is singular
    Eigen::VectorXd col = Eigen::VectorXd::Zero(16);
    col[0] = 1.0;
    col[15] = 1.0;
    Circulant c(col);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(16);
    CHECK_THROWS_AS(c.solve(b), SingularCirculant);
}

TEST_CASE("circulant: apply(solve(b)) round trip") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (int n : {7, 16, 33}) {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
        col[0] = 2.0;  // diagonally dominant, comfortably nonsingular
        col[1] = 0.5;
        col[n - 1] = 0.5;
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) b[i] = uni(rng);
        Circulant c(col);
        CHECK((c.apply(c.solve(b)) - b).norm() < 1e-9 * b.norm());
    }
}
