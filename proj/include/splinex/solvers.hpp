#pragma once

#include <Eigen/Core>
#include <map>
#include <string>

#include "splinex/assembly.hpp"

namespace splinex {

struct SolverConfig {
    double svd_cutoff = 1e-12;    ///< relative singular value threshold
    double qr_pivot_tol = 1e-12;  ///< relative pivot threshold for the block QR
    int max_iterations = 0;       ///< iterative solver cap; 0 means 4*N
    double iter_tol = 1e-10;      ///< relative residual stop for the iterative path
};

struct FitResult {
    Eigen::VectorXd x;
    double residual_norm = 0.0;     ///< ||A x - b||_2, recomputed from x
    double coefficient_norm = 0.0;  ///< ||x||_2
    Eigen::Index numerical_rank = 0;
    Eigen::Index block_rows = 0;
    Eigen::Index block_cols = 0;
    long long nonzero_count = 0;
    int iterations = 0;
    bool converged = true;  ///< false when the iterative path hit its cap
    std::map<std::string, double> timings;  ///< seconds per stage
};

/// Truncated-SVD least squares on the densified system; the reference
/// ("oracle") solver for all others.  Singular values below
/// svd_cutoff * sigma_max are discarded.
FitResult solve_svd(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                    const SolverConfig& config = {});

/// Plain dense variant used by tests.
Eigen::VectorXd svd_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  double cutoff_rel);

/// Reduced AZ: compress A - A Z* A to its nonzero rows and columns, solve
/// the dense block by rank-revealing QR, then complete with x2 = Z*(b - A E x1).
/// Works with every Z spec (gram duals use the dense-column compression).
FitResult solve_reduced_az(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                           const SolverConfig& config = {});

/// Sparse AZ: identical algebra, but step 1 goes through the sparse
/// seven-step construction of A - A Z* A; requires a sparse Z spec.
FitResult solve_sparse_az(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                          const SolverConfig& config = {});

/// Conjugate-gradient least squares on the normal equations.  Baseline
/// quality only; returns the best iterate with converged = false when the
/// iteration cap is reached.
FitResult solve_iterative(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                          const SolverConfig& config = {});

}  // namespace splinex
