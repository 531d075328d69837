#include "splinex/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "splinex/errors.hpp"

namespace splinex {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string format_csv(const CsvTable& t) {
    std::string out;
    for (size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + num(row[i]);
        out += "\n";
    }
    for (const auto& c : t.comments) out += "# " + c + "\n";
    return out;
}

void write_csv(const CsvTable& t, const std::string& path) {
    write_text_file(format_csv(t), path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        if (first) {
            while (std::getline(ss, tok, ',')) t.header.push_back(tok);
            first = false;
        } else {
            std::vector<double> row;
            while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log10(x[i]), ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

std::string svg_loglog(const std::vector<SvgSeries>& series, const std::string& x_label,
                       const std::string& y_label) {
    const int W = 640, H = 480, ML = 70, MR = 20, MT = 20, MB = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmin > xmax) xmin = 1, xmax = 10, ymin = 1, ymax = 10;
    if (xmin == xmax) xmax = 10 * xmin;
    if (ymin == ymax) ymax = 10 * ymin;
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    auto px = [&](double v) { return ML + (std::log10(v) - lx0) / (lx1 - lx0) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (std::log10(v) - ly0) / (ly1 - ly0) * (H - MT - MB); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    o << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const double xv = std::pow(10.0, e);
        o << "<line x1=\"" << px(xv) << "\" y1=\"" << H - MB << "\" x2=\"" << px(xv) << "\" y2=\""
          << H - MB + 5 << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << px(xv) << "\" y=\"" << H - MB + 18 << "\" text-anchor=\"middle\">1e" << e
          << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        const double yv = std::pow(10.0, e);
        o << "<line x1=\"" << ML - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ML << "\" y2=\"" << py(yv)
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << ML - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">1e" << e
          << "</text>\n";
    }
    o << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
    o << "<text x=\"14\" y=\"" << (MT + H - MB) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << (MT + H - MB) / 2 << ")\">" << y_label << "</text>\n";
    int ci = 0;
    for (const auto& s : series) {
        const char* col = colors[ci % 6];
        o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            o << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        o << "\"/>\n";
        o << "<text x=\"" << W - MR - 5 << "\" y=\"" << MT + 16 * (ci + 1) << "\" text-anchor=\"end\" fill=\""
          << col << "\">" << s.label << "</text>\n";
        ++ci;
    }
    o << "</svg>\n";
    return o.str();
}

void write_text_file(const std::string& content, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    f << content;
}

}  // namespace splinex
