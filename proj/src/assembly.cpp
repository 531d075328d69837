#include "splinex/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "splinex/errors.hpp"
#include "splinex/fft.hpp"

namespace splinex {

namespace {

// One-dimensional stencil: offsets (relative to the column centre q*l on
// the lattice) and the values placed there.
struct Stencil {
    int lo = 0;
    std::vector<double> values;  // values[off - lo]
};

Stencil spline_stencil(int p, int q) {
    const SampledSpline b = sample_spline(p, q);
    Stencil s;
    s.lo = b.lo;
    s.values = b.values;
    return s;
}

// Stencil of a length-L periodic dual sample sequence v, restricted to a
// window [wlo, whi] outside of which v is guaranteed zero.  If the window
// covers the whole period it collapses to [0, L-1].
Stencil periodic_stencil(const Eigen::VectorXd& v, int wlo, int whi) {
    const int L = static_cast<int>(v.size());
    if (whi - wlo + 1 >= L) {
        wlo = 0;
        whi = L - 1;
    }
    Stencil s;
    s.lo = wlo;
    s.values.resize(static_cast<size_t>(whi - wlo + 1));
    for (int off = wlo; off <= whi; ++off) {
        s.values[static_cast<size_t>(off - wlo)] = v[((off % L) + L) % L];
    }
    return s;
}

// Generic column-wise assembly of a matrix with entries
// prod_i stencil_i((k_i - q_i l_i) mod L_i) on the masked grid.
SpMat assemble_stencil_matrix(const MaskedGrid& grid, const std::vector<int>& N,
                              const std::vector<int>& q,
                              const std::vector<Stencil>& st) {
    const int d = grid.dim();
    int64_t totalN = 1;
    for (int n : N) totalN *= n;

    std::vector<Eigen::Triplet<double>> trips;
    std::vector<int> l(d), off(d), kk(d);
    std::vector<std::pair<int32_t, double>> col_entries;
    for (int64_t lin = 0; lin < totalN; ++lin) {
        int64_t r = lin;
        for (int i = d - 1; i >= 0; --i) {
            l[i] = static_cast<int>(r % N[i]);
            r /= N[i];
        }
        col_entries.clear();
        for (int i = 0; i < d; ++i) off[i] = 0;
        while (true) {
            double val = 1.0;
            for (int i = 0; i < d; ++i) {
                val *= st[i].values[static_cast<size_t>(off[i])];
                int v = (q[i] * l[i] + st[i].lo + off[i]) % grid.L[i];
                if (v < 0) v += grid.L[i];
                kk[i] = v;
            }
            if (val != 0.0) {
                const int32_t row = grid.index_of[static_cast<size_t>(grid.encode(kk.data()))];
                if (row >= 0) col_entries.emplace_back(row, val);
            }
            int i = d - 1;
            while (i >= 0) {
                if (++off[i] < static_cast<int>(st[i].values.size())) break;
                off[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
        std::sort(col_entries.begin(), col_entries.end());
        for (const auto& [row, v] : col_entries)
            trips.emplace_back(row, static_cast<int>(lin), v);
    }
    SpMat m(grid.M, totalN);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

}  // namespace

ZSpec make_gram_zspec(const TensorBasis& basis) {
    ZSpec z;
    z.kind = DualZKind::gram;
    for (int i = 0; i < basis.dim(); ++i)
        z.gram.push_back(discrete_dual_coeffs(basis.p[i], basis.q[i], basis.N[i]));
    return z;
}

ZSpec make_banded_zspec(const TensorBasis& basis, double eps) {
    ZSpec z;
    z.kind = DualZKind::banded;
    for (int i = 0; i < basis.dim(); ++i)
        z.banded.push_back(
            truncate_dual(discrete_dual_coeffs(basis.p[i], basis.q[i], basis.N[i]), eps));
    return z;
}

ZSpec make_compact_zspec(const TensorBasis& basis, std::optional<int> K,
                         std::optional<double> norm_cap) {
    ZSpec z;
    z.kind = DualZKind::compact;
    for (int i = 0; i < basis.dim(); ++i)
        z.compact.push_back(compact_dual(basis.p[i], basis.q[i], K, norm_cap));
    return z;
}

SpMat assemble_a(const TensorBasis& basis, const MaskedGrid& grid) {
    std::vector<Stencil> st;
    for (int i = 0; i < basis.dim(); ++i) st.push_back(spline_stencil(basis.p[i], basis.q[i]));
    return assemble_stencil_matrix(grid, basis.N, basis.q, st);
}

ExtensionSystem build_system(const Domain& domain, const TensorBasis& basis, ZSpec zspec) {
    validate_basis(basis);
    ExtensionSystem sys;
    sys.basis = basis;
    sys.grid = build_masked_grid(domain, basis);
    sys.zspec = std::move(zspec);
    sys.A = assemble_a(basis, sys.grid);

    const int d = basis.dim();
    std::vector<Stencil> st(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const int L = basis.grid_len(i);
        switch (sys.zspec.kind) {
            case DualZKind::gram:
                sys.dual_grid.push_back(dual_grid_samples(sys.zspec.gram[i]));
                break;
            case DualZKind::banded: {
                const TruncatedDual& t = sys.zspec.banded[i];
                sys.dual_grid.push_back(dual_grid_samples(t));
                const SampledSpline b = sample_spline(basis.p[i], basis.q[i]);
                st[i] = periodic_stencil(sys.dual_grid.back(),
                                         -basis.q[i] * t.band_radius + b.lo,
                                         basis.q[i] * t.band_radius + b.hi);
                break;
            }
            case DualZKind::compact: {
                const CompactDualSequence& h = sys.zspec.compact[i];
                sys.dual_grid.push_back(periodize_sequence(h.values, L));
                st[i] = periodic_stencil(sys.dual_grid.back(), -h.K, h.K);
                break;
            }
        }
    }
    if (sys.zspec.kind == DualZKind::gram) {
        for (int i = 0; i < d; ++i) {
            std::vector<double> v(sys.dual_grid[i].data(),
                                  sys.dual_grid[i].data() + sys.dual_grid[i].size());
            sys.dual_hat.push_back(dft_real(v));
        }
    } else {
        sys.Z = assemble_stencil_matrix(sys.grid, basis.N, basis.q, st);
    }
    return sys;
}

Eigen::VectorXd apply_a(const ExtensionSystem& sys, const Eigen::VectorXd& x) {
    return sys.A * x;
}

Eigen::VectorXd apply_at(const ExtensionSystem& sys, const Eigen::VectorXd& y) {
    return sys.A.transpose() * y;
}

namespace {

// In-place circular correlation of every pencil along one axis with a
// kernel given by its DFT: pencil <- idft(dft(pencil) .* conj(kernel_hat)).
void correlate_axis(cvector& data, const std::vector<int>& L, int axis,
                    const cvector& kernel_hat) {
    const int n = L[axis];
    int64_t inner = 1;
    for (size_t i = axis + 1; i < L.size(); ++i) inner *= L[i];
    int64_t outer = 1;
    for (int i = 0; i < axis; ++i) outer *= L[i];

    cvector pencil(static_cast<size_t>(n));
    for (int64_t o = 0; o < outer; ++o) {
        for (int64_t in = 0; in < inner; ++in) {
            const int64_t base = o * n * inner + in;
            for (int j = 0; j < n; ++j) pencil[static_cast<size_t>(j)] = data[base + j * inner];
            pencil = dft(pencil);
            for (int j = 0; j < n; ++j) pencil[static_cast<size_t>(j)] *= std::conj(kernel_hat[static_cast<size_t>(j)]);
            pencil = idft(pencil);
            for (int j = 0; j < n; ++j) data[base + j * inner] = pencil[static_cast<size_t>(j)];
        }
    }
}

}  // namespace

Eigen::VectorXd apply_zstar(const ExtensionSystem& sys, const Eigen::VectorXd& y) {
    if (y.size() != sys.rows()) throw std::invalid_argument("apply_zstar: size mismatch");
    if (sys.zspec.kind != DualZKind::gram) return sys.Z.transpose() * y;

    // scatter to the full lattice, correlate axis by axis, gather at q*l
    const int d = sys.grid.dim();
    cvector Y(static_cast<size_t>(sys.grid.total_lattice()), cdouble(0));
    for (int64_t m = 0; m < sys.grid.M; ++m)
        Y[static_cast<size_t>(sys.grid.points[m])] = cdouble(y[m], 0.0);
    for (int i = 0; i < d; ++i) correlate_axis(Y, sys.grid.L, i, sys.dual_hat[i]);

    const int64_t totalN = sys.basis.total_N();
    Eigen::VectorXd out(totalN);
    std::vector<int> l(d), kk(d);
    for (int64_t lin = 0; lin < totalN; ++lin) {
        int64_t r = lin;
        for (int i = d - 1; i >= 0; --i) {
            l[i] = static_cast<int>(r % sys.basis.N[i]);
            r /= sys.basis.N[i];
        }
        for (int i = 0; i < d; ++i) kk[i] = sys.basis.q[i] * l[i];
        out[lin] = Y[static_cast<size_t>(sys.grid.encode(kk.data()))].real();
    }
    return out;
}

SparseAmAZtA build_am_azta(const ExtensionSystem& sys) {
    if (sys.zspec.kind == DualZKind::gram)
        throw UnsupportedZspec("build_am_azta needs a sparse (compact or banded) Z");
    const SpMat& A = sys.A;
    const SpMat& Z = sys.Z;
    const int64_t M = sys.rows();
    const int64_t Ntot = sys.cols();

    // step 1: boundary columns K and extension E
    SparseAmAZtA out;
    out.col_set = boundary_index_set(sys.basis, sys.grid, SupportVariant::discreteSupport).indices;
    const auto& K = out.col_set;
    const int nK = static_cast<int>(K.size());
    if (nK == 0) {
        out.matrix = SpMat(M, Ntot);
        return out;
    }
    std::vector<int32_t> col_rank(static_cast<size_t>(Ntot), -1);
    for (int j = 0; j < nK; ++j) col_rank[static_cast<size_t>(K[j])] = j;

    // step 2: rows of A E with a structural nonzero
    std::vector<int32_t> row_rank(static_cast<size_t>(M), -1);
    for (int64_t l : K)
        for (SpMat::InnerIterator it(A, l); it; ++it) row_rank[static_cast<size_t>(it.row())] = 0;
    for (int64_t m = 0; m < M; ++m)
        if (row_rank[static_cast<size_t>(m)] == 0) {
            row_rank[static_cast<size_t>(m)] = static_cast<int32_t>(out.row_set.size());
            out.row_set.push_back(m);
        }
    const int nR = static_cast<int>(out.row_set.size());

    // step 3: R A E
    SpMat RAE(nR, nK);
    {
        std::vector<Eigen::Triplet<double>> t;
        for (int j = 0; j < nK; ++j)
            for (SpMat::InnerIterator it(A, K[j]); it; ++it)
                t.emplace_back(row_rank[static_cast<size_t>(it.row())], j, it.value());
        RAE.setFromTriplets(t.begin(), t.end());
    }

    // step 4: dual columns meeting the row set (plus K itself, which
    // carries the identity term of I - Z*A)
    std::vector<int32_t> kt_rank(static_cast<size_t>(Ntot), -1);
    std::vector<int64_t> Kt;
    for (int64_t l = 0; l < Ntot; ++l) {
        bool hit = col_rank[static_cast<size_t>(l)] >= 0;
        if (!hit)
            for (SpMat::InnerIterator it(Z, l); it; ++it)
                if (row_rank[static_cast<size_t>(it.row())] >= 0) {
                    hit = true;
                    break;
                }
        if (hit) {
            kt_rank[static_cast<size_t>(l)] = static_cast<int32_t>(Kt.size());
            Kt.push_back(l);
        }
    }
    const int nKt = static_cast<int>(Kt.size());

    // step 5: (R Z E~)* and A E~
    SpMat ZtR(nKt, nR);  // (R Z E~)^T: row t <-> dual column Kt[t]
    {
        std::vector<Eigen::Triplet<double>> t;
        for (int j = 0; j < nKt; ++j)
            for (SpMat::InnerIterator it(Z, Kt[j]); it; ++it) {
                const int32_t rr = row_rank[static_cast<size_t>(it.row())];
                if (rr >= 0) t.emplace_back(j, rr, it.value());
            }
        ZtR.setFromTriplets(t.begin(), t.end());
    }
    SpMat AKt(M, nKt);
    {
        std::vector<Eigen::Triplet<double>> t;
        for (int j = 0; j < nKt; ++j)
            for (SpMat::InnerIterator it(A, Kt[j]); it; ++it)
                t.emplace_back(it.row(), j, it.value());
        AKt.setFromTriplets(t.begin(), t.end());
    }

    // step 6: W = E~*E - (R Z E~)* (R A E), then V = (A E~) W.  The
    // column-by-column scatter keeps the cost proportional to the fill,
    // which is O(#K) by the band structure of the factors.
    SpMat W(nKt, nK);
    {
        std::vector<Eigen::Triplet<double>> t;
        Eigen::VectorXd scratch = Eigen::VectorXd::Zero(nKt);
        std::vector<int> touched;
        for (int j = 0; j < nK; ++j) {
            touched.clear();
            const int32_t diag = kt_rank[static_cast<size_t>(K[j])];
            scratch[diag] += 1.0;
            touched.push_back(diag);
            for (SpMat::InnerIterator ra(RAE, j); ra; ++ra) {
                const int m = static_cast<int>(ra.row());
                for (SpMat::InnerIterator zc(ZtR, m); zc; ++zc) {
                    if (scratch[zc.row()] == 0.0) touched.push_back(static_cast<int>(zc.row()));
                    scratch[zc.row()] -= zc.value() * ra.value();
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int r : touched) {
                if (scratch[r] != 0.0) t.emplace_back(r, j, scratch[r]);
                scratch[r] = 0.0;
            }
        }
        W.setFromTriplets(t.begin(), t.end());
    }

    // step 7: scatter V = (A E~) W into the M x N result at columns K
    std::vector<Eigen::Triplet<double>> t;
    {
        Eigen::VectorXd scratch = Eigen::VectorXd::Zero(M);
        std::vector<int64_t> touched;
        for (int j = 0; j < nK; ++j) {
            touched.clear();
            for (SpMat::InnerIterator w(W, j); w; ++w) {
                const int c = static_cast<int>(w.row());
                for (SpMat::InnerIterator a(AKt, c); a; ++a) {
                    if (scratch[a.row()] == 0.0) touched.push_back(a.row());
                    scratch[a.row()] += a.value() * w.value();
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int64_t r : touched) {
                if (scratch[r] != 0.0) t.emplace_back(static_cast<int>(r), static_cast<int>(K[j]), scratch[r]);
                scratch[r] = 0.0;
            }
        }
    }
    out.matrix = SpMat(M, Ntot);
    out.matrix.setFromTriplets(t.begin(), t.end());
    out.matrix.makeCompressed();
    return out;
}

CompressedBlock reduce(const ExtensionSystem& sys) {
    CompressedBlock blk;
    blk.col_index_map =
        boundary_index_set(sys.basis, sys.grid, SupportVariant::discreteSupport).indices;
    const int nK = static_cast<int>(blk.col_index_map.size());
    const int64_t M = sys.rows();
    if (nK == 0) {
        blk.block.resize(0, 0);
        return blk;
    }

    if (sys.zspec.kind == DualZKind::gram) {
        // dense-column path (desk scale): (A - A Z* A) e_l per boundary column
        Eigen::MatrixXd cols(M, nK);
        for (int j = 0; j < nK; ++j) {
            Eigen::VectorXd a = sys.A.col(blk.col_index_map[j]);
            cols.col(j) = a - sys.A * apply_zstar(sys, a);
        }
        const double cutoff = 1e-12 * cols.cwiseAbs().maxCoeff();
        for (int64_t m = 0; m < M; ++m)
            if (cols.row(m).cwiseAbs().maxCoeff() > cutoff) blk.row_index_map.push_back(m);
        blk.nonzeros = (cols.cwiseAbs().array() > cutoff).count();
        blk.block.resize(static_cast<Eigen::Index>(blk.row_index_map.size()), nK);
        for (size_t r = 0; r < blk.row_index_map.size(); ++r)
            blk.block.row(static_cast<Eigen::Index>(r)) = cols.row(blk.row_index_map[r]);
        return blk;
    }

    const SparseAmAZtA s = build_am_azta(sys);
    blk.nonzeros = s.matrix.nonZeros();
    double cutoff = 0.0;
    if (sys.zspec.kind == DualZKind::banded) {
        double mx = 0.0;
        for (int j = 0; j < nK; ++j)
            for (SpMat::InnerIterator it(s.matrix, blk.col_index_map[j]); it; ++it)
                mx = std::max(mx, std::abs(it.value()));
        cutoff = 1e-12 * mx;
    }
    std::vector<char> mark(static_cast<size_t>(M), 0);
    for (int j = 0; j < nK; ++j)
        for (SpMat::InnerIterator it(s.matrix, blk.col_index_map[j]); it; ++it)
            if (sys.zspec.kind == DualZKind::compact || std::abs(it.value()) > cutoff)
                mark[static_cast<size_t>(it.row())] = 1;
    std::vector<int32_t> rank(static_cast<size_t>(M), -1);
    for (int64_t m = 0; m < M; ++m)
        if (mark[static_cast<size_t>(m)]) {
            rank[static_cast<size_t>(m)] = static_cast<int32_t>(blk.row_index_map.size());
            blk.row_index_map.push_back(m);
        }
    blk.block.setZero(static_cast<Eigen::Index>(blk.row_index_map.size()), nK);
    for (int j = 0; j < nK; ++j)
        for (SpMat::InnerIterator it(s.matrix, blk.col_index_map[j]); it; ++it) {
            const int32_t r = rank[static_cast<size_t>(it.row())];
            if (r >= 0) blk.block(r, j) = it.value();
        }
    return blk;
}

void write_matrix_market(const SpMat& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path);
    f << "%%MatrixMarket matrix coordinate real general\n";
    f << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    f.precision(17);
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it)
            f << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

}  // namespace splinex
