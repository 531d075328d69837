#include "splinex/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "splinex/errors.hpp"

namespace splinex {

namespace {

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw UnknownDomain("bad numeric parameter: " + tok);
        out.push_back(v);
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Domain interval_domain(double a, double b) {
    Domain d;
    d.dim = 1;
    d.descriptor = "interval:" + fmt(a) + "," + fmt(b);
    d.contains = [a, b](const double* x) { return x[0] >= a && x[0] <= b; };
    return d;
}

Domain box_domain(const std::vector<double>& lo, const std::vector<double>& hi) {
    if (lo.size() != hi.size() || lo.empty())
        throw UnknownDomain("box: lo/hi size mismatch");
    Domain d;
    d.dim = static_cast<int>(lo.size());
    d.descriptor = "box:";
    for (size_t i = 0; i < lo.size(); ++i)
        d.descriptor += (i ? "," : "") + fmt(lo[i]) + "," + fmt(hi[i]);
    d.contains = [lo, hi](const double* x) {
        for (size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    };
    return d;
}

Domain disk_domain(double cx, double cy, double r) {
    Domain d;
    d.dim = 2;
    d.descriptor = "disk:" + fmt(cx) + "," + fmt(cy) + "," + fmt(r);
    d.contains = [cx, cy, r](const double* x) {
        const double dx = x[0] - cx, dy = x[1] - cy;
        return dx * dx + dy * dy <= r * r;
    };
    return d;
}

Domain ball_domain(double cx, double cy, double cz, double r) {
    Domain d;
    d.dim = 3;
    d.descriptor = "ball:" + fmt(cx) + "," + fmt(cy) + "," + fmt(cz) + "," + fmt(r);
    d.contains = [cx, cy, cz, r](const double* x) {
        const double dx = x[0] - cx, dy = x[1] - cy, dz = x[2] - cz;
        return dx * dx + dy * dy + dz * dz <= r * r;
    };
    return d;
}

Domain flower_domain() {
    Domain petals;
    petals.dim = 2;
    petals.descriptor = "polarFlower";
    petals.contains = [](const double* u) {
        // map [0,1]^2 -> [-1,1]^2
        const double x = 2.0 * u[0] - 1.0, y = 2.0 * u[1] - 1.0;
        const double rmax = 0.35 * (2.0 + 0.5 * std::abs(std::cos(5.0 * std::atan2(y, x))));
        return std::sqrt(x * x + y * y) <= rmax;
    };
    Domain hole;
    hole.dim = 2;
    hole.descriptor = "disk(mapped)";
    hole.contains = [](const double* u) {
        const double x = 2.0 * u[0] - 1.0, y = 2.0 * u[1] - 1.0;
        const double dx = x - 0.5, dy = y;
        return dx * dx + dy * dy <= 0.15 * 0.15;
    };
    Domain d = difference_domain(std::move(petals), std::move(hole));
    d.descriptor = "flower";
    return d;
}

Domain difference_domain(Domain a, Domain b) {
    if (a.dim != b.dim) throw UnknownDomain("difference: dimension mismatch");
    Domain d;
    d.dim = a.dim;
    d.descriptor = "difference(" + a.descriptor + "," + b.descriptor + ")";
    auto ac = a.contains, bc = b.contains;
    d.contains = [ac, bc](const double* x) { return ac(x) && !bc(x); };
    return d;
}

Domain raster_mask_domain(std::shared_ptr<const std::vector<uint8_t>> mask,
                          int ncols, int nrows) {
    if (!mask || static_cast<int>(mask->size()) != ncols * nrows)
        throw UnknownDomain("raster mask: size mismatch");
    Domain d;
    d.dim = 2;
    d.descriptor = "rasterMask:" + std::to_string(ncols) + "x" + std::to_string(nrows);
    d.contains = [mask, ncols, nrows](const double* x) {
        // the 1e-9 cell nudge absorbs float round-trip error when x is a
        // lattice point sitting exactly on a cell edge (x = k / ncols)
        int i = static_cast<int>(std::floor(x[0] * ncols + 1e-9));
        int j = static_cast<int>(std::floor(x[1] * nrows + 1e-9));
        i = std::min(std::max(i, 0), ncols - 1);
        j = std::min(std::max(j, 0), nrows - 1);
        return (*mask)[static_cast<size_t>(j) * ncols + i] != 0;
    };
    return d;
}

Domain builtin_domain(const std::string& descriptor) {
    const size_t colon = descriptor.find(':');
    const std::string name = descriptor.substr(0, colon);
    const std::vector<double> par =
        colon == std::string::npos ? std::vector<double>{} : parse_params(descriptor.substr(colon + 1));

    if (name == "interval") {
        if (par.size() != 2) throw UnknownDomain("interval needs a,b");
        return interval_domain(par[0], par[1]);
    }
    if (name == "box") {
        if (par.empty() || par.size() % 2 != 0) throw UnknownDomain("box needs a1,b1[,a2,b2,...]");
        std::vector<double> lo, hi;
        for (size_t i = 0; i < par.size(); i += 2) {
            lo.push_back(par[i]);
            hi.push_back(par[i + 1]);
        }
        return box_domain(lo, hi);
    }
    if (name == "disk") {
        if (par.size() != 3) throw UnknownDomain("disk needs cx,cy,r");
        return disk_domain(par[0], par[1], par[2]);
    }
    if (name == "ball") {
        if (par.size() != 4) throw UnknownDomain("ball needs cx,cy,cz,r");
        return ball_domain(par[0], par[1], par[2], par[3]);
    }
    if (name == "flower") {
        if (!par.empty()) throw UnknownDomain("flower takes no parameters");
        return flower_domain();
    }
    throw UnknownDomain("unknown domain: " + descriptor);
}

}  // namespace splinex
