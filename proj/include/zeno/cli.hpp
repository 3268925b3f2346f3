// cli.hpp: run configuration, CSV tables and the zeno-lab subcommands

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/form_factor.hpp"
#include "zeno/measurement.hpp"

namespace zeno::cli {

enum class GridScale { Lin, Log };

struct RunConfig {
    double omega_a = 3.0;
    double lambda = 0.1;
    double big_lambda = 1.0;
    SchemeFamily scheme = SchemeFamily::Pulsed;
    double grid_min = 1e-3;
    double grid_max = 1e3;
    std::size_t grid_points = 1001;
    GridScale grid_scale = GridScale::Log;
    std::size_t n_modes = 4000;
    double horizon = 500.0;
    bool horizon_set = false;      // oracle uses min(horizon, recurrence guard) unless set
    std::string output_path = "-"; // "-" is stdout
};

/// Config keys in echo order.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value; Config error naming the key otherwise.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// `key = value` lines, `#` comments, blank lines ignored; unknown keys are errors.
void parse_config_text(RunConfig& cfg, std::string_view text, std::string_view source = "config");
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Throws Config when an invariant is violated.
void validate(const RunConfig& cfg);

SystemParams system_params(const RunConfig& cfg);

/// Control grid for rate sweeps (grid_min..grid_max, lin or log).
std::vector<double> control_grid(const RunConfig& cfg);
/// Time grid for survival / oracle: grid_points points uniform on [0, horizon].
std::vector<double> time_grid(const RunConfig& cfg);

/// `key = value` text for each config key.
std::vector<std::string> config_echo(const RunConfig& cfg);

/// 12 significant digits, shortest general form, '.' separator.
std::string format_number(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footer; // comment lines after the data, without '#'
    int exit_code = 0;               // command-level verdict beyond success
};

/// `# zeno-lab v1`, config echo, header, rows, footer; '\n' line endings.
std::string render_csv(const RunConfig& cfg, const Table& table);

/// Line chart of every numeric column against the first one.
std::string render_svg(const Table& table, bool log_x);

Table cmd_survival(const RunConfig& cfg);
Table cmd_rates(const RunConfig& cfg);
/// One row per scheme; `require` makes a missing transition for cfg.scheme exit 3.
Table cmd_transition(const RunConfig& cfg, bool require);
/// exit_code 2 when max_abs_diff exceeds kOracleTolerance.
Table cmd_oracle(const RunConfig& cfg);

inline constexpr double kOracleTolerance = 1e-3;

/// Writes text to path ("-" is stdout); Io error naming the path.
void write_output(const std::string& path, const std::string& text);

/// Full zeno-lab entry point; returns the process exit code.
int run(int argc, char** argv);

} // namespace zeno::cli
