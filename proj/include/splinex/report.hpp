#pragma once

#include <string>
#include <vector>

namespace splinex {

/// Numeric CSV table: one header row, '.' decimal, UTF-8, LF endings.
/// Trailing comment lines carry derived quantities (slopes).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;
};

std::string format_csv(const CsvTable& t);
void write_csv(const CsvTable& t, const std::string& path);
CsvTable read_csv(const std::string& path);

/// Least-squares slope of log10(y) against log10(x); skips non-positive pairs.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// One plotted line of a log-log SVG chart.
struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

/// Minimal log-log chart (axes, tick labels, polylines).  Depends only on
/// the series content, so identical input gives identical bytes.
std::string svg_loglog(const std::vector<SvgSeries>& series, const std::string& x_label,
                       const std::string& y_label);

void write_text_file(const std::string& content, const std::string& path);

}  // namespace splinex
