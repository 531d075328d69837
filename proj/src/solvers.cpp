#include "splinex/solvers.hpp"

#include <Eigen/Dense>
#include <chrono>

#include "splinex/errors.hpp"

namespace splinex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void finalize(FitResult& r, const ExtensionSystem& sys, const Eigen::VectorXd& b) {
    r.residual_norm = (sys.A * r.x - b).norm();
    r.coefficient_norm = r.x.norm();
}

}  // namespace

Eigen::VectorXd svd_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  double cutoff_rel) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = s.size() ? cutoff_rel * s[0] : 0.0;
    Eigen::VectorXd ub = svd.matrixU().transpose() * b;
    for (Eigen::Index i = 0; i < s.size(); ++i) ub[i] = s[i] >= cutoff && s[i] > 0.0 ? ub[i] / s[i] : 0.0;
    return svd.matrixV() * ub;
}

FitResult solve_svd(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                    const SolverConfig& config) {
    const auto t0 = Clock::now();
    FitResult r;
    Eigen::MatrixXd Ad = Eigen::MatrixXd(sys.A);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Ad, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = s.size() ? config.svd_cutoff * s[0] : 0.0;
    Eigen::VectorXd ub = svd.matrixU().transpose() * b;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] >= cutoff && s[i] > 0.0) {
            ub[i] /= s[i];
            ++rank;
        } else {
            ub[i] = 0.0;
        }
    }
    r.x = svd.matrixV() * ub;
    r.numerical_rank = rank;
    r.nonzero_count = sys.A.nonZeros();
    r.timings["solve_s"] = seconds_since(t0);
    r.timings["total_s"] = r.timings["solve_s"];
    finalize(r, sys, b);
    return r;
}

namespace {

FitResult az_solve(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                   const SolverConfig& config) {
    if (b.size() != sys.rows()) throw std::invalid_argument("az_solve: rhs length mismatch");
    FitResult r;
    const auto t0 = Clock::now();

    CompressedBlock blk = reduce(sys);
    r.block_rows = static_cast<Eigen::Index>(blk.row_index_map.size());
    r.block_cols = static_cast<Eigen::Index>(blk.col_index_map.size());
    r.timings["reduce_s"] = seconds_since(t0);

    Eigen::VectorXd x1 = Eigen::VectorXd::Zero(sys.cols());
    const auto t1 = Clock::now();
    if (r.block_cols > 0) {
        // rhs = R (I - A Z*) b
        Eigen::VectorXd rhs_full = b - sys.A * apply_zstar(sys, b);
        Eigen::VectorXd rhs(r.block_rows);
        for (Eigen::Index i = 0; i < r.block_rows; ++i) rhs[i] = rhs_full[blk.row_index_map[i]];

        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(blk.block);
        cod.setThreshold(config.qr_pivot_tol);
        Eigen::VectorXd x1_hat = cod.solve(rhs);
        r.numerical_rank = cod.rank();
        for (Eigen::Index j = 0; j < r.block_cols; ++j) x1[blk.col_index_map[j]] = x1_hat[j];
    }
    r.timings["solve_s"] = seconds_since(t1);

    const auto t2 = Clock::now();
    Eigen::VectorXd x2 = apply_zstar(sys, b - sys.A * x1);
    r.x = x1 + x2;
    r.timings["complement_s"] = seconds_since(t2);
    r.timings["total_s"] = seconds_since(t0);
    r.nonzero_count = blk.nonzeros;
    finalize(r, sys, b);
    return r;
}

}  // namespace

FitResult solve_reduced_az(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                           const SolverConfig& config) {
    return az_solve(sys, b, config);
}

FitResult solve_sparse_az(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                          const SolverConfig& config) {
    if (sys.zspec.kind == DualZKind::gram)
        throw UnsupportedZspec("solve_sparse_az needs a compact or banded dual");
    return az_solve(sys, b, config);
}

FitResult solve_iterative(const ExtensionSystem& sys, const Eigen::VectorXd& b,
                          const SolverConfig& config) {
    const auto t0 = Clock::now();
    FitResult r;
    const Eigen::Index n = sys.cols();
    const int cap = config.max_iterations > 0 ? config.max_iterations
                                              : static_cast<int>(4 * n);

    // CGLS on A^T A x = A^T b
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd res = b;
    Eigen::VectorXd s = sys.A.transpose() * res;
    const double stop = config.iter_tol * s.norm();
    Eigen::VectorXd p = s;
    double gamma = s.squaredNorm();
    int it = 0;
    bool converged = std::sqrt(gamma) <= stop;
    while (!converged && it < cap) {
        Eigen::VectorXd q = sys.A * p;
        const double qn = q.squaredNorm();
        if (qn == 0.0) break;
        const double alpha = gamma / qn;
        x += alpha * p;
        res -= alpha * q;
        s = sys.A.transpose() * res;
        const double gamma_new = s.squaredNorm();
        ++it;
        if (std::sqrt(gamma_new) <= stop) {
            converged = true;
            break;
        }
        p = s + (gamma_new / gamma) * p;
        gamma = gamma_new;
    }
    r.x = x;
    r.iterations = it;
    r.converged = converged;
    r.nonzero_count = sys.A.nonZeros();
    r.timings["solve_s"] = seconds_since(t0);
    r.timings["total_s"] = r.timings["solve_s"];
    finalize(r, sys, b);
    return r;
}

}  // namespace splinex
