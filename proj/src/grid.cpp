#include "splinex/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "splinex/errors.hpp"

namespace splinex {

void validate_basis(const TensorBasis& basis) {
    const int d = basis.dim();
    if (d == 0 || basis.q.size() != basis.p.size() || basis.N.size() != basis.p.size())
        throw std::invalid_argument("basis: p, q, N must have equal nonzero length");
    for (int i = 0; i < d; ++i) {
        if (basis.p[i] < 0) throw std::invalid_argument("basis: p must be >= 0");
        if (basis.q[i] < 1) throw std::invalid_argument("basis: q must be >= 1");
        if (basis.N[i] < basis.p[i] + 2)
            throw std::invalid_argument("basis: N must be >= p + 2");
        const int Q = sample_spline(basis.p[i], basis.q[i]).support_radius();
        if (basis.q[i] * basis.N[i] < 2 * Q + 1)
            throw std::invalid_argument("basis: qN must be >= 2Q + 1");
    }
}

std::vector<double> MaskedGrid::coords(int64_t m) const {
    std::vector<int> k(dim());
    decode(points[m], k.data());
    std::vector<double> x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = static_cast<double>(k[i]) / L[i];
    return x;
}

MaskedGrid build_masked_grid(const Domain& domain, const TensorBasis& basis) {
    validate_basis(basis);
    if (domain.dim != basis.dim())
        throw std::invalid_argument("build_masked_grid: dimension mismatch");
    MaskedGrid g;
    g.N = basis.N;
    g.q = basis.q;
    g.L.resize(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) g.L[i] = basis.grid_len(i);

    const int64_t total = g.total_lattice();
    g.index_of.assign(static_cast<size_t>(total), -1);
    std::vector<int> k(g.dim(), 0);
    std::vector<double> x(g.dim());
    // row-major sweep keeps the point list sorted by construction
    for (int64_t lin = 0; lin < total; ++lin) {
        g.decode(lin, k.data());
        for (int i = 0; i < g.dim(); ++i) x[i] = static_cast<double>(k[i]) / g.L[i];
        if (domain.contains(x.data())) {
            g.index_of[static_cast<size_t>(lin)] = static_cast<int32_t>(g.points.size());
            g.points.push_back(lin);
        }
    }
    g.M = static_cast<int64_t>(g.points.size());
    if (g.M == 0) throw EmptyDomain("domain contains no grid points: " + domain.descriptor);
    return g;
}

BoundaryIndexSet boundary_index_set(const TensorBasis& basis, const MaskedGrid& grid,
                                    SupportVariant variant) {
    const int d = basis.dim();
    for (int i = 0; i < d; ++i)
        if (basis.N[i] != grid.N[i] || basis.q[i] != grid.q[i])
            throw std::invalid_argument("boundary_index_set: grid/basis mismatch");

    // per-dimension support window of basis function l in lattice steps,
    // relative to the centre q*l
    std::vector<int> wlo(d), whi(d);
    for (int i = 0; i < d; ++i) {
        if (variant == SupportVariant::discreteSupport) {
            const SampledSpline s = sample_spline(basis.p[i], basis.q[i]);
            wlo[i] = s.lo;
            whi[i] = s.hi;
        } else {
            // closed support [-(p+1)/2, (p+1)/2] scaled by q
            const double r = basis.q[i] * (basis.p[i] + 1) / 2.0;
            wlo[i] = static_cast<int>(std::ceil(-r));
            whi[i] = static_cast<int>(std::floor(r));
        }
    }

    BoundaryIndexSet out;
    out.variant = variant;
    std::vector<int> l(d, 0), off(d), kk(d);
    const int64_t totalN = basis.total_N();
    for (int64_t lin = 0; lin < totalN; ++lin) {
        // decode basis multi-index (row-major over N)
        int64_t r = lin;
        for (int i = d - 1; i >= 0; --i) {
            l[i] = static_cast<int>(r % basis.N[i]);
            r /= basis.N[i];
        }
        bool any_in = false, any_out = false;
        // sweep the support window
        for (int i = 0; i < d; ++i) off[i] = wlo[i];
        while (true) {
            for (int i = 0; i < d; ++i) {
                int v = (basis.q[i] * l[i] + off[i]) % grid.L[i];
                if (v < 0) v += grid.L[i];
                kk[i] = v;
            }
            if (grid.inside(grid.encode(kk.data())))
                any_in = true;
            else
                any_out = true;
            if (any_in && any_out) break;
            int i = d - 1;
            while (i >= 0) {
                if (++off[i] <= whi[i]) break;
                off[i] = wlo[i];
                --i;
            }
            if (i < 0) break;
        }
        if (any_in && any_out) out.indices.push_back(lin);
    }
    return out;
}

}  // namespace splinex
