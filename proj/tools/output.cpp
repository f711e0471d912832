#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace d1q2::cli {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header_comments,
                     const std::vector<std::string>& columns)
    : path_(path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    os_.open(path);
    if (!os_) throw std::runtime_error("cannot open " + path.string());
    for (const auto& h : header_comments) os_ << "# " << h << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(num(v));
    row(cells);
}

void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<SvgSeries>& series, const std::vector<SvgCell>& cells,
               bool unit_circle, bool log_y) {
    const double W = 640, H = 480, M = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
    auto grow = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (const auto& s : series)
        for (const auto& p : s.points) grow(p.x, ty(p.y));
    for (const auto& c : cells) {
        grow(c.x, c.y);
        grow(c.x + c.w, c.y + c.h);
    }
    if (unit_circle) {
        grow(-1, -1);
        grow(1, 1);
    }
    if (!(x1 > x0)) {
        x0 -= 1;
        x1 += 1;
    }
    if (!(y1 > y0)) {
        y0 -= 1;
        y1 += 1;
    }
    auto X = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
    auto Y = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : cells)
        os << "<rect x=\"" << X(c.x) << "\" y=\"" << Y(c.y + c.h) << "\" width=\"" << X(c.x + c.w) - X(c.x)
           << "\" height=\"" << Y(c.y) - Y(c.y + c.h) << "\" fill=\"" << c.fill << "\"/>\n";
    os << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (unit_circle)
        os << "<ellipse cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" rx=\"" << X(1) - X(0) << "\" ry=\""
           << Y(0) - Y(1) << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& s : series) {
        if (s.line) {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
            for (const auto& p : s.points)
                if (std::isfinite(ty(p.y))) os << X(p.x) << "," << Y(ty(p.y)) << " ";
            os << "\"/>\n";
        } else {
            for (const auto& p : s.points)
                if (std::isfinite(ty(p.y)))
                    os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(ty(p.y)) << "\" r=\"" << s.radius
                       << "\" fill=\"" << s.color << "\"/>\n";
        }
    }
    os << "<text x=\"" << M << "\" y=\"" << M - 15 << "\" font-family=\"sans-serif\" font-size=\"14\">" << title
       << "</text>\n";
    os << "<text x=\"" << M << "\" y=\"" << H - 15 << "\" font-family=\"sans-serif\" font-size=\"11\">x: ["
       << num(x0) << ", " << num(x1) << "]  y" << (log_y ? " (log10)" : "") << ": [" << num(y0) << ", " << num(y1)
       << "]</text>\n";
    os << "</svg>\n";
}

}  // namespace d1q2::cli
