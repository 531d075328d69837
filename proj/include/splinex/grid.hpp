#pragma once

#include <cstdint>
#include <vector>

#include "splinex/bspline.hpp"
#include "splinex/domain.hpp"

namespace splinex {

/// Tensor product of univariate periodised spline bases: degree p_i,
/// oversampling q_i and basis size N_i per dimension.
struct TensorBasis {
    std::vector<int> p;
    std::vector<int> q;
    std::vector<int> N;

    int dim() const { return static_cast<int>(p.size()); }
    long total_N() const {
        long t = 1;
        for (int n : N) t *= n;
        return t;
    }
    int grid_len(int i) const { return q[i] * N[i]; }
    long total_grid() const {
        long t = 1;
        for (int i = 0; i < dim(); ++i) t *= grid_len(i);
        return t;
    }
};

/// Check N_i >= p_i + 2 and q_i N_i >= 2 Q_i + 1 (a periodised translate
/// must not overlap itself on the grid); throws std::invalid_argument.
void validate_basis(const TensorBasis& basis);

/// Restriction of the full Cartesian lattice {k_i / (q_i N_i)} to a
/// domain.  Points are stored as linear lattice indices in row-major
/// order (last dimension fastest), strictly increasing.
struct MaskedGrid {
    std::vector<int> N, q, L;        ///< per-dimension sizes, L = q*N
    std::vector<int64_t> points;     ///< sorted linear lattice indices
    std::vector<int32_t> index_of;   ///< lattice -> point row, -1 outside
    int64_t M = 0;

    int dim() const { return static_cast<int>(L.size()); }
    int64_t total_lattice() const {
        int64_t t = 1;
        for (int l : L) t *= l;
        return t;
    }
    bool inside(int64_t lattice_index) const { return index_of[lattice_index] >= 0; }

    /// Decode a linear lattice index into per-dimension indices.
    void decode(int64_t lin, int* k) const {
        for (int i = dim() - 1; i >= 0; --i) {
            k[i] = static_cast<int>(lin % L[i]);
            lin /= L[i];
        }
    }
    int64_t encode(const int* k) const {
        int64_t lin = 0;
        for (int i = 0; i < dim(); ++i) lin = lin * L[i] + k[i];
        return lin;
    }
    /// Coordinates of the m-th point, t_m = k / (qN) per dimension.
    std::vector<double> coords(int64_t m) const;
};

/// Build the masked grid for a domain.  Throws EmptyDomain if no lattice
/// point is a member.
MaskedGrid build_masked_grid(const Domain& domain, const TensorBasis& basis);

enum class SupportVariant {
    continuousSupport,  ///< lattice points inside the closed support interval
    discreteSupport     ///< lattice points where b_q(k - ql) != 0
};

/// Basis indices whose support (per variant) contains both domain points
/// and complement points of the full lattice.  Sorted linear indices over
/// the row-major basis index set.
struct BoundaryIndexSet {
    std::vector<int64_t> indices;
    SupportVariant variant = SupportVariant::discreteSupport;
};

BoundaryIndexSet boundary_index_set(const TensorBasis& basis, const MaskedGrid& grid,
                                    SupportVariant variant);

}  // namespace splinex
