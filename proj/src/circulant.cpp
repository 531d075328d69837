#include "splinex/circulant.hpp"

#include <cmath>
#include <stdexcept>

#include "splinex/errors.hpp"

namespace splinex {

Circulant::Circulant(Eigen::VectorXd first_column) : col_(std::move(first_column)) {
    if (col_.size() == 0) throw std::invalid_argument("Circulant: empty first column");
    std::vector<double> c(col_.data(), col_.data() + col_.size());
    eig_ = dft_real(c);
}

Eigen::VectorXd Circulant::apply(const Eigen::VectorXd& x) const {
    if (x.size() != col_.size()) throw std::invalid_argument("Circulant::apply: size mismatch");
    cvector xt(static_cast<size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) xt[static_cast<size_t>(i)] = cdouble(x[i], 0.0);
    xt = dft(xt);
    for (size_t i = 0; i < xt.size(); ++i) xt[i] *= eig_[i];
    xt = idft(xt);
    Eigen::VectorXd y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = xt[static_cast<size_t>(i)].real();
    return y;
}

Eigen::VectorXd Circulant::solve(const Eigen::VectorXd& b, double tol_rel) const {
    if (b.size() != col_.size()) throw std::invalid_argument("Circulant::solve: size mismatch");
    double max_mod = 0.0;
    for (const auto& e : eig_) max_mod = std::max(max_mod, std::abs(e));
    const double tol = tol_rel * max_mod;
    for (const auto& e : eig_) {
        if (std::abs(e) <= tol) {
            throw SingularCirculant("circulant symbol has a (near-)zero eigenvalue");
        }
    }
    cvector bt(static_cast<size_t>(b.size()));
    for (Eigen::Index i = 0; i < b.size(); ++i) bt[static_cast<size_t>(i)] = cdouble(b[i], 0.0);
    bt = dft(bt);
    for (size_t i = 0; i < bt.size(); ++i) bt[i] /= eig_[i];
    bt = idft(bt);
    Eigen::VectorXd x(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) x[i] = bt[static_cast<size_t>(i)].real();
    return x;
}

}  // namespace splinex
