#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <optional>
#include <string>
#include <vector>

#include "splinex/duals.hpp"
#include "splinex/fft.hpp"
#include "splinex/grid.hpp"

namespace splinex {

using SpMat = Eigen::SparseMatrix<double>;  // compressed column storage

enum class DualZKind {
    gram,    ///< full circulant dual; Z applied as an operator via FFTs
    banded,  ///< truncated Gram dual; Z is a banded sparse matrix
    compact  ///< compact discrete dual; Z is sparse with bandwidth 2K+1
};

/// Per-dimension dual data backing the Z matrix Z(m,l) = dual_l(t_m).
struct ZSpec {
    DualZKind kind = DualZKind::compact;
    std::vector<DualCoefficients> gram;        ///< kind == gram
    std::vector<TruncatedDual> banded;         ///< kind == banded
    std::vector<CompactDualSequence> compact;  ///< kind == compact
};

ZSpec make_gram_zspec(const TensorBasis& basis);
ZSpec make_banded_zspec(const TensorBasis& basis, double eps);
ZSpec make_compact_zspec(const TensorBasis& basis,
                         std::optional<int> K = std::nullopt,
                         std::optional<double> norm_cap = std::nullopt);

/// Collocation system on a masked grid: A(m,l) = prod_i b_{q_i}((k_m)_i - q_i l_i)
/// with periodic index arithmetic mod q_i N_i, plus the structured dual
/// matrix Z.  For gram duals Z is kept as per-dimension grid sequences and
/// applied via circulant correlation; otherwise Z is assembled sparse.
struct ExtensionSystem {
    TensorBasis basis;
    MaskedGrid grid;
    ZSpec zspec;
    SpMat A;  ///< M x N
    SpMat Z;  ///< M x N, empty for gram duals
    std::vector<Eigen::VectorXd> dual_grid;  ///< per-dim dual samples, length q_i N_i
    std::vector<cvector> dual_hat;           ///< DFTs of dual_grid (gram apply path)

    int64_t rows() const { return grid.M; }
    int64_t cols() const { return basis.total_N(); }
};

ExtensionSystem build_system(const Domain& domain, const TensorBasis& basis, ZSpec zspec);

/// A alone (no dual); entries are products of sampled-spline values.
SpMat assemble_a(const TensorBasis& basis, const MaskedGrid& grid);

Eigen::VectorXd apply_a(const ExtensionSystem& sys, const Eigen::VectorXd& x);
Eigen::VectorXd apply_at(const ExtensionSystem& sys, const Eigen::VectorXd& y);

/// Z* y: sparse transpose product, or scatter -> per-axis circulant
/// correlation -> gather for gram duals (O(N log N)).
Eigen::VectorXd apply_zstar(const ExtensionSystem& sys, const Eigen::VectorXd& y);

/// Result of the sparse seven-step construction of A - A Z* A.
struct SparseAmAZtA {
    SpMat matrix;                        ///< M x N, nonzero columns within K only
    std::vector<int64_t> col_set;        ///< K: boundary basis indices (E)
    std::vector<int64_t> row_set;        ///< K^: rows of A E with a structural nonzero (R)
};

/// Build A - A Z* A as a sparse matrix in O(#K) nonzeros without any
/// general sparse-matrix product.  Requires a sparse Z (compact or
/// banded); throws UnsupportedZspec for gram duals.
SparseAmAZtA build_am_azta(const ExtensionSystem& sys);

/// Compressed boundary block R (A - A Z* A) E.
struct CompressedBlock {
    std::vector<int64_t> col_index_map;  ///< K, basis indices
    std::vector<int64_t> row_index_map;  ///< nonzero-row indices into the point list
    Eigen::MatrixXd block;
    long long nonzeros = 0;  ///< nonzeros of the sparse A - A Z* A representation
};

/// Select the nonzero columns (boundary index set, discrete variant) and
/// rows of A - A Z* A and materialize the dense block.  Rows are detected
/// structurally for compact duals and by magnitude > 1e-12 * max|entry|
/// for banded and gram duals.
CompressedBlock reduce(const ExtensionSystem& sys);

/// MatrixMarket coordinate text export.
void write_matrix_market(const SpMat& m, const std::string& path);

}  // namespace splinex
