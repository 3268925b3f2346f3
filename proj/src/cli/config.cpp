#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zeno/cli.hpp"
#include "zeno/error.hpp"

namespace zeno::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
    throw Error(ErrorKind::Config,
                "config key '" + std::string(key) + "': " + std::string(why) + " (got '" +
                    std::string(value) + "')");
}

double parse_real(std::string_view key, std::string_view value) {
    double v = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) bad_value(key, value, "expected a finite real");
    return v;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    std::size_t v = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end) bad_value(key, value, "expected a non-negative integer");
    return v;
}

const char* scheme_name(SchemeFamily f) {
    switch (f) {
    case SchemeFamily::Pulsed: return "pulsed";
    case SchemeFamily::Continuous: return "continuous";
    case SchemeFamily::Rabi: return "rabi";
    }
    return "?";
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "omega_a", "lambda", "big_lambda", "scheme", "grid_min", "grid_max",
        "grid_points", "grid_scale", "n_modes", "horizon", "out"};
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "omega_a") cfg.omega_a = parse_real(key, value);
    else if (key == "lambda") cfg.lambda = parse_real(key, value);
    else if (key == "big_lambda") cfg.big_lambda = parse_real(key, value);
    else if (key == "grid_min") cfg.grid_min = parse_real(key, value);
    else if (key == "grid_max") cfg.grid_max = parse_real(key, value);
    else if (key == "horizon") {
        cfg.horizon = parse_real(key, value);
        cfg.horizon_set = true;
    }
    else if (key == "grid_points") cfg.grid_points = parse_count(key, value);
    else if (key == "n_modes") cfg.n_modes = parse_count(key, value);
    else if (key == "scheme") {
        if (value == "pulsed") cfg.scheme = SchemeFamily::Pulsed;
        else if (value == "continuous") cfg.scheme = SchemeFamily::Continuous;
        else if (value == "rabi") cfg.scheme = SchemeFamily::Rabi;
        else bad_value(key, value, "expected pulsed, continuous or rabi");
    } else if (key == "grid_scale") {
        if (value == "lin") cfg.grid_scale = GridScale::Lin;
        else if (value == "log") cfg.grid_scale = GridScale::Log;
        else bad_value(key, value, "expected lin or log");
    } else if (key == "out") {
        if (value.empty()) bad_value(key, value, "expected a path");
        cfg.output_path = std::string(value);
    } else {
        throw Error(ErrorKind::Config, "unknown config key '" + std::string(key) + "'");
    }
}

void parse_config_text(RunConfig& cfg, std::string_view text, std::string_view source) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::Config, std::string(source) + ":" + std::to_string(line_no) +
                                               ": expected 'key = value'");
        }
        apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    parse_config_text(cfg, buf.str(), path.string());
}

void validate(const RunConfig& cfg) {
    auto need = [](bool ok, const char* key, const char* why) {
        if (!ok) throw Error(ErrorKind::Config, std::string("config key '") + key + "': " + why);
    };
    need(cfg.omega_a > 0.0, "omega_a", "must be positive");
    need(cfg.lambda > 0.0, "lambda", "must be positive");
    need(cfg.big_lambda > 0.0, "big_lambda", "must be positive");
    need(cfg.grid_min < cfg.grid_max, "grid_min", "must be smaller than grid_max");
    need(cfg.grid_points >= 1, "grid_points", "must be >= 1");
    need(cfg.grid_scale == GridScale::Lin || cfg.grid_min > 0.0, "grid_min",
         "must be positive on a log grid");
    need(cfg.grid_min >= 0.0, "grid_min", "controls must be non-negative");
    need(cfg.n_modes >= 1, "n_modes", "must be >= 1");
    need(cfg.horizon > 0.0, "horizon", "must be positive");
}

SystemParams system_params(const RunConfig& cfg) {
    return lorentzian_params(cfg.omega_a, cfg.lambda, cfg.big_lambda);
}

std::vector<double> control_grid(const RunConfig& cfg) {
    const std::size_t n = cfg.grid_points;
    if (n == 1) return {cfg.grid_min};
    std::vector<double> grid(n);
    const double span = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / span;
        grid[i] = cfg.grid_scale == GridScale::Lin
                      ? cfg.grid_min + (cfg.grid_max - cfg.grid_min) * u
                      : cfg.grid_min * std::pow(cfg.grid_max / cfg.grid_min, u);
    }
    grid.front() = cfg.grid_min;
    grid.back() = cfg.grid_max;
    return grid;
}

std::vector<double> time_grid(const RunConfig& cfg) {
    const std::size_t n = cfg.grid_points;
    if (n == 1) return {0.0};
    std::vector<double> t(n);
    const double step = cfg.horizon / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = step * static_cast<double>(i);
    t.back() = cfg.horizon;
    return t;
}

std::vector<std::string> config_echo(const RunConfig& cfg) {
    return {
        "omega_a = " + format_number(cfg.omega_a),
        "lambda = " + format_number(cfg.lambda),
        "big_lambda = " + format_number(cfg.big_lambda),
        std::string("scheme = ") + scheme_name(cfg.scheme),
        "grid_min = " + format_number(cfg.grid_min),
        "grid_max = " + format_number(cfg.grid_max),
        "grid_points = " + std::to_string(cfg.grid_points),
        std::string("grid_scale = ") + (cfg.grid_scale == GridScale::Lin ? "lin" : "log"),
        "n_modes = " + std::to_string(cfg.n_modes),
        "horizon = " + format_number(cfg.horizon),
        "out = " + cfg.output_path,
    };
}

} // namespace zeno::cli
