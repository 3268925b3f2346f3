#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

#include "zeno/cli.hpp"

namespace zeno::cli {

namespace {

std::optional<double> number(const std::string& cell) {
    double v = 0.0;
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

} // namespace

std::string render_svg(const Table& table, bool log_x) {
    constexpr double W = 640, H = 400, M = 50;
    const std::size_t ncol = table.columns.size();

    std::vector<std::vector<std::optional<double>>> cols(ncol);
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < ncol; ++c) cols[c].push_back(c < row.size() ? number(row[c]) : std::nullopt);
    }
    auto xval = [&](std::size_t r) -> std::optional<double> {
        auto x = cols.empty() ? std::nullopt : cols[0][r];
        if (!x || (log_x && *x <= 0.0)) return std::nullopt;
        return log_x ? std::log10(*x) : *x;
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    std::vector<std::size_t> series;
    for (std::size_t c = 1; c < ncol; ++c) {
        if (std::none_of(cols[c].begin(), cols[c].end(), [](auto v) { return v.has_value(); })) continue;
        series.push_back(c);
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto x = xval(r);
            if (!x || !cols[c][r]) continue;
            x0 = std::min(x0, *x);
            x1 = std::max(x1, *x);
            y0 = std::min(y0, *cols[c][r]);
            y1 = std::max(y1, *cols[c][r]);
        }
    }
    if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
    if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
    auto px = [&](double x) { return M + (W - 2 * M) * (x - x0) / (x1 - x0); };
    auto py = [&](double y) { return H - M - (H - 2 * M) * (y - y0) / (y1 - y0); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">\n";
    s += "<rect x=\"50\" y=\"50\" width=\"540\" height=\"300\" fill=\"none\" stroke=\"#444\"/>\n";
    s += "<text x=\"320\" y=\"390\" text-anchor=\"middle\" font-size=\"12\">" +
         (ncol ? table.columns[0] : std::string()) + (log_x ? " (log10)" : "") + "</text>\n";
    s += "<text x=\"50\" y=\"365\" font-size=\"10\">" + format_number(x0) + "</text>\n";
    s += "<text x=\"590\" y=\"365\" text-anchor=\"end\" font-size=\"10\">" + format_number(x1) + "</text>\n";
    s += "<text x=\"45\" y=\"350\" text-anchor=\"end\" font-size=\"10\">" + format_number(y0) + "</text>\n";
    s += "<text x=\"45\" y=\"55\" text-anchor=\"end\" font-size=\"10\">" + format_number(y1) + "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t c = series[i];
        const char* colour = kPalette[i % std::size(kPalette)];
        std::string pts;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto x = xval(r);
            if (!x || !cols[c][r]) continue;
            pts += format_number(px(*x)) + "," + format_number(py(*cols[c][r])) + " ";
        }
        s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" points=\"" + pts + "\"/>\n";
        s += "<text x=\"" + format_number(W - M - 5) + "\" y=\"" + format_number(M + 15 + 14.0 * static_cast<double>(i)) +
             "\" text-anchor=\"end\" font-size=\"11\" fill=\"" + colour + "\">" + table.columns[c] + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace zeno::cli
