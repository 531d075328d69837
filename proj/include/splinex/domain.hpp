#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace splinex {

/// Subset of [0,1]^d given by a total, deterministic membership predicate.
/// Closed-set convention: points on the boundary count as members.
struct Domain {
    int dim = 1;
    std::function<bool(const double*)> contains;
    std::string descriptor;

    bool member(const std::vector<double>& x) const { return contains(x.data()); }
};

Domain interval_domain(double a, double b);
Domain box_domain(const std::vector<double>& lo, const std::vector<double>& hi);
Domain disk_domain(double cx, double cy, double r);
Domain ball_domain(double cx, double cy, double cz, double r);

/// Polar "flower" test domain: in [-1,1]^2 coordinates the set
/// ||x|| <= 0.35 (2 + 0.5 |cos(5 atan2(x2, x1))|) minus the disk with
/// centre (0.5, 0) and radius 0.15, affinely mapped onto [0,1]^2.
Domain flower_domain();

/// Set difference a \ b (membership in a and not in b).
Domain difference_domain(Domain a, Domain b);

/// 2-D mask domain: cell (i, j) of an ncols x nrows boolean grid covers
/// [i/ncols, (i+1)/ncols) x [j/nrows, (j+1)/nrows); mask is row-major
/// with row 0 at the bottom (smallest y).
Domain raster_mask_domain(std::shared_ptr<const std::vector<uint8_t>> mask,
                          int ncols, int nrows);

/// Parse a CLI descriptor such as "interval:0.3,0.9", "box:0,0.5,0,0.5",
/// "disk:0.5,0.5,0.333", "ball:0.5,0.5,0.5,0.4" or "flower".
/// Throws UnknownDomain for anything else.
Domain builtin_domain(const std::string& descriptor);

}  // namespace splinex
