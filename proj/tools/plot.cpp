#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace gltool {

int CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv(std::istream& in, const std::string& source) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    CsvTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (t.header.empty()) {
            t.header = split(line);
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.header.size())
            throw PlotError(fmt::format("{}:{}: {} cells, header has {}", source, lineno, cells.size(), t.header.size()));
        t.rows.push_back(std::move(cells));
    }
    if (t.header.empty()) throw PlotError(source + ": no header line");
    return t;
}

CsvTable load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PlotError("cannot open '" + path + "'");
    return read_csv(in, path);
}

std::vector<Series> series_from_csv(const CsvTable& t, const std::string& label) {
    const int cg = t.column("gamma"), cy = t.column("gap");
    if (cg < 0) throw PlotError("CSV lacks a gamma column");
    if (cy < 0) throw PlotError("CSV lacks a gap column");
    const int cn = t.column("n"), cl = t.column("bound_lower"), cu = t.column("bound_upper");

    auto number = [](const std::string& s, std::size_t row) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw PlotError(fmt::format("data row {}: '{}' is not a number", row + 1, s));
    };

    std::map<int, Series> by_n;  // -1 collects parity-mode rows
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const int n = cn >= 0 && !row[cn].empty() ? static_cast<int>(number(row[cn], r)) : -1;
        Series& s = by_n[n];
        s.x.push_back(number(row[cg], r));
        s.y.push_back(number(row[cy], r));
        if (cl >= 0 && cu >= 0 && !row[cl].empty() && !row[cu].empty()) {
            s.lower.push_back(number(row[cl], r));
            s.upper.push_back(number(row[cu], r));
        }
    }
    std::vector<Series> out;
    for (auto& [n, s] : by_n) {
        if (s.lower.size() != s.x.size()) {
            s.lower.clear();
            s.upper.clear();
        }
        s.label = n < 0 ? label : fmt::format("{} n={}", label, n);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotStyle& style) {
    if (series.empty()) throw PlotError("nothing to plot");
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto take_y = [&](double v) {
        if (style.log_y && v <= 0) return;
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
    };
    for (const Series& s : series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (s.x[k] <= 0) continue;
            x0 = std::min(x0, s.x[k]);
            x1 = std::max(x1, s.x[k]);
            take_y(s.y[k]);
            if (!s.lower.empty()) {
                take_y(s.lower[k]);
                take_y(s.upper[k]);
            }
        }
    if (!(x0 <= x1) || !(y0 <= y1)) throw PlotError("no positive gamma values to plot on a log axis");
    if (x0 == x1) {
        x0 /= 2;
        x1 *= 2;
    }
    if (!style.log_y) y0 = std::min(0.0, y0);
    if (y0 == y1) y1 = y0 + 1;

    const double left = 70, right = 20, top = style.title.empty() ? 20 : 40, bottom = 50;
    const double w = style.width - left - right, h = style.height - top - bottom;
    const double lx0 = std::log10(x0), lx1 = std::log10(x1);
    const double ly0 = style.log_y ? std::log10(y0) : y0, ly1 = style.log_y ? std::log10(y1) : y1;
    auto px = [&](double x) { return left + w * (std::log10(x) - lx0) / (lx1 - lx0); };
    auto py = [&](double y) {
        const double v = style.log_y ? std::log10(std::max(y, y0)) : y;
        return top + h * (1 - (v - ly0) / (ly1 - ly0));
    };

    std::ostringstream o;
    o << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)",
                     style.width, style.height)
      << "\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty())
        o << fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                         left + w / 2, escape(style.title));

    for (const Series& s : series) {
        if (s.lower.empty()) continue;
        std::string pts;
        for (std::size_t k = 0; k < s.x.size(); ++k)
            if (s.x[k] > 0) pts += fmt::format("{:.2f},{:.2f} ", px(s.x[k]), py(s.upper[k]));
        for (std::size_t k = s.x.size(); k-- > 0;)
            if (s.x[k] > 0) pts += fmt::format("{:.2f},{:.2f} ", px(s.x[k]), py(s.lower[k]));
        o << "<polygon points=\"" << pts << "\" fill=\"#bbbbbb\" fill-opacity=\"0.4\" stroke=\"none\"/>\n";
    }

    // Decade ticks on x, five evenly spaced ticks on y.
    o << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top,
                     w, h);
    for (int d = static_cast<int>(std::ceil(lx0 - 1e-9)); d <= static_cast<int>(std::floor(lx1 + 1e-9)); ++d) {
        const double x = px(std::pow(10.0, d));
        o << fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n", x, top + h,
                         top + h + 5)
          << fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">1e{}</text>\n", x, top + h + 18, d);
    }
    for (int k = 0; k <= 4; ++k) {
        const double v = style.log_y ? std::pow(10.0, ly0 + (ly1 - ly0) * k / 4) : y0 + (y1 - y0) * k / 4;
        const double y = py(v);
        o << fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", left - 5, y,
                         left)
          << fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 8, y + 4, v);
    }
    o << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">gamma</text>\n", left + w / 2,
                     style.height - 12)
      << fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">gap</text>\n",
                     top + h / 2);

    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series& s = series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        std::string pts;
        for (std::size_t k = 0; k < s.x.size(); ++k)
            if (s.x[k] > 0) pts += fmt::format("{:.2f},{:.2f} ", px(s.x[k]), py(s.y[k]));
        o << fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\"/>\n", pts, color)
          << fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", left + 10, top + 16 + 16 * i, color,
                         escape(s.label));
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace gltool
