#include "splinex/raster.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "splinex/errors.hpp"

namespace splinex {

std::vector<uint8_t> RasterDataset::mask_bottom_up() const {
    std::vector<uint8_t> out(mask.size());
    for (int j = 0; j < nrows; ++j)
        for (int i = 0; i < ncols; ++i)
            out[static_cast<size_t>(j) * ncols + i] =
                mask[static_cast<size_t>(nrows - 1 - j) * ncols + i];
    return out;
}

int64_t RasterDataset::count_valid() const {
    int64_t n = 0;
    for (uint8_t v : mask) n += v;
    return n;
}

RasterDataset read_esri_ascii(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw RasterParseError("cannot open raster: " + path);
    RasterDataset r;
    bool have_nodata = false;
    std::string key;
    // header: "key value" pairs until the first purely numeric token
    for (int guard = 0; guard < 8; ++guard) {
        std::streampos pos = f.tellg();
        if (!(f >> key)) throw RasterParseError("raster has no data");
        std::istringstream num(key);
        double probe;
        if (num >> probe && num.eof()) {
            f.seekg(pos);
            break;  // start of data
        }
        for (auto& c : key) c = static_cast<char>(std::tolower(c));
        double val;
        if (!(f >> val)) throw RasterParseError("bad header value for " + key);
        if (key == "ncols") r.ncols = static_cast<int>(val);
        else if (key == "nrows") r.nrows = static_cast<int>(val);
        else if (key == "xllcorner") r.xllcorner = val;
        else if (key == "yllcorner") r.yllcorner = val;
        else if (key == "cellsize") r.cellsize = val;
        else if (key == "nodata_value") r.nodata = val, have_nodata = true;
        else throw RasterParseError("unknown header key: " + key);
    }
    if (r.ncols <= 0 || r.nrows <= 0) throw RasterParseError("raster has no cells");
    const size_t n = static_cast<size_t>(r.ncols) * r.nrows;
    r.samples.resize(n);
    for (size_t i = 0; i < n; ++i)
        if (!(f >> r.samples[i])) throw RasterParseError("raster data ended early");
    r.mask.resize(n);
    for (size_t i = 0; i < n; ++i)
        r.mask[i] = (!have_nodata || r.samples[i] != r.nodata) ? 1 : 0;
    return r;
}

void write_esri_ascii(const RasterDataset& r, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path);
    f.precision(17);
    f << "ncols " << r.ncols << "\n";
    f << "nrows " << r.nrows << "\n";
    f << "xllcorner " << r.xllcorner << "\n";
    f << "yllcorner " << r.yllcorner << "\n";
    f << "cellsize " << r.cellsize << "\n";
    f << "NODATA_value " << r.nodata << "\n";
    for (int j = 0; j < r.nrows; ++j) {
        for (int i = 0; i < r.ncols; ++i) f << (i ? " " : "") << r.at(i, j);
        f << "\n";
    }
}

std::vector<uint8_t> read_csv_mask(const std::string& path, int* ncols, int* nrows) {
    std::ifstream f(path);
    if (!f) throw RasterParseError("cannot open mask: " + path);
    std::vector<uint8_t> out;
    std::string line;
    int cols = -1, rows = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        int c = 0;
        while (std::getline(ss, tok, ',')) {
            if (tok != "0" && tok != "1") throw RasterParseError("mask entries must be 0 or 1");
            out.push_back(tok == "1" ? 1 : 0);
            ++c;
        }
        if (cols < 0) cols = c;
        else if (c != cols) throw RasterParseError("ragged mask rows");
        ++rows;
    }
    if (rows == 0) throw RasterParseError("empty mask file");
    *ncols = cols;
    *nrows = rows;
    return out;
}

RasterDataset synthetic_raster(int ncols, int nrows,
                               const std::function<double(double, double)>& f,
                               const Domain& mask_domain) {
    RasterDataset r;
    r.ncols = ncols;
    r.nrows = nrows;
    r.cellsize = 1.0 / ncols;
    r.nodata = -9999.0;
    r.samples.resize(static_cast<size_t>(ncols) * nrows);
    r.mask.resize(r.samples.size());
    for (int j = 0; j < nrows; ++j) {      // j = row from top
        const double y = static_cast<double>(nrows - 1 - j) / nrows;
        for (int i = 0; i < ncols; ++i) {
            const double x = static_cast<double>(i) / ncols;
            const double pt[2] = {x, y};
            const size_t idx = static_cast<size_t>(j) * ncols + i;
            if (mask_domain.contains(pt)) {
                r.samples[idx] = f(x, y);
                r.mask[idx] = 1;
            } else {
                r.samples[idx] = r.nodata;
                r.mask[idx] = 0;
            }
        }
    }
    return r;
}

}  // namespace splinex
