#pragma once

#include <Eigen/Core>

#include "splinex/fft.hpp"

namespace splinex {

/// Real circulant matrix C(i,j) = c((i - j) mod n) given by its first
/// column c.  Eigenvalues are the DFT of the first column; apply and
/// solve run in O(n log n).  Immutable after construction and safe to
/// share across threads.
class Circulant {
public:
    explicit Circulant(Eigen::VectorXd first_column);

    Eigen::Index size() const { return col_.size(); }
    const Eigen::VectorXd& first_column() const { return col_; }
    const cvector& eigenvalues() const { return eig_; }

    /// y = C x.
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

    /// Solve C x = b.  Throws SingularCirculant if any eigenvalue has
    /// modulus <= tol_rel times the largest modulus.
    Eigen::VectorXd solve(const Eigen::VectorXd& b, double tol_rel = 1e-13) const;

private:
    Eigen::VectorXd col_;
    cvector eig_;
};

}  // namespace splinex
