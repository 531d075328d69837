#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "splinex/domain.hpp"

namespace splinex {

/// ESRI ASCII grid (.asc).  Sample rows are stored top row first, as in
/// the file; grid point (i, j) with y index j counted upward maps to
/// samples[(nrows-1-j) * ncols + i].
struct RasterDataset {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 1.0;
    double nodata = -9999.0;
    std::vector<double> samples;  ///< row-major from the top row
    std::vector<uint8_t> mask;    ///< 1 where sample != nodata, same layout

    double at(int col, int row_from_top) const {
        return samples[static_cast<size_t>(row_from_top) * ncols + col];
    }
    bool valid(int col, int row_from_top) const {
        return mask[static_cast<size_t>(row_from_top) * ncols + col] != 0;
    }
    /// Mask with row 0 at the bottom, as raster_mask_domain expects.
    std::vector<uint8_t> mask_bottom_up() const;
    int64_t count_valid() const;
};

RasterDataset read_esri_ascii(const std::string& path);
void write_esri_ascii(const RasterDataset& r, const std::string& path);

/// Plain 0/1 comma-separated mask, one file row per raster row (top first).
std::vector<uint8_t> read_csv_mask(const std::string& path, int* ncols, int* nrows);

/// Fixture generator: f sampled on an ncols x nrows lattice over [0,1)^2,
/// masked by a domain (cells outside get the nodata value).
RasterDataset synthetic_raster(int ncols, int nrows,
                               const std::function<double(double, double)>& f,
                               const Domain& mask_domain);

}  // namespace splinex
