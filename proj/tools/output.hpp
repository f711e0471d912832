#pragma once

#include <complex>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace d1q2::cli {

std::string num(double v);  // %.17g

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header_comments,
              const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& values);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream os_;
};

struct SvgPoint {
    double x, y;
};

struct SvgSeries {
    std::vector<SvgPoint> points;
    std::string color = "black";
    bool line = false;
    double radius = 1.5;
};

struct SvgCell {
    double x, y, w, h;
    std::string fill;
};

// Minimal plot: axes box, optional filled cells, optional unit circle, series.
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<SvgSeries>& series, const std::vector<SvgCell>& cells = {},
               bool unit_circle = false, bool log_y = false);

}  // namespace d1q2::cli
