#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gltool {

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

// Plain comma-separated values without quoting, as written by the sweep.
CsvTable read_csv(std::istream& in, const std::string& source = "<csv>");
CsvTable load_csv(const std::string& path);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> lower;  // empty when the CSV carries no bounds
    std::vector<double> upper;
};

// One series per fermion number, or a single one in parity mode. Throws
// PlotError when gamma or gap is missing.
std::vector<Series> series_from_csv(const CsvTable& t, const std::string& label);

struct PlotStyle {
    std::string title;
    int width = 720;
    int height = 460;
    bool log_y = false;
};

// Log-x gap curves; bounds are drawn as a shaded band behind the curves.
std::string render_svg(const std::vector<Series>& series, const PlotStyle& style);

}  // namespace gltool
