#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "zeno/cli.hpp"
#include "zeno/error.hpp"

namespace zeno::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0"; // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string render_csv(const RunConfig& cfg, const Table& table) {
    std::string out = "# zeno-lab v1\n";
    for (const auto& line : config_echo(cfg)) out += "# " + line + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    for (const auto& line : table.footer) out += "# " + line + "\n";
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

} // namespace zeno::cli
