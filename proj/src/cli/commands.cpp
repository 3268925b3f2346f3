#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>

#include "zeno/cli.hpp"
#include "zeno/error.hpp"
#include "zeno/oracle.hpp"
#include "zeno/resolvent.hpp"
#include "zeno/spectral.hpp"
#include "zeno/transition.hpp"

namespace zeno::cli {

Table cmd_survival(const RunConfig& cfg) {
    const auto params = system_params(cfg);
    const double gamma = golden_rule_gamma(params);
    const double z = find_pole(params).z_renorm;
    Table t;
    t.columns = {"t", "P", "exp_gamma_t", "Z_exp_gamma_t"};
    for (double time : time_grid(cfg)) {
        const double e = std::exp(-gamma * time);
        t.rows.push_back({format_number(time), format_number(survival_probability(params, time)),
                          format_number(e), format_number(z * e)});
    }
    return t;
}

Table cmd_rates(const RunConfig& cfg) {
    const auto params = system_params(cfg);
    const auto grid = control_grid(cfg);
    const auto curve = sweep(params, cfg.scheme, grid);
    Table t;
    t.columns = {"control", "abscissa", "gamma_eff", "gamma_eff_over_gamma", "regime"};
    std::size_t clamped = 0;
    for (const auto& p : curve.points) {
        clamped += p.clamped ? 1 : 0;
        t.rows.push_back({format_number(p.control), format_number(p.abscissa), format_number(p.gamma_eff),
                          format_number(p.ratio), to_string(p.regime)});
    }
    t.footer.push_back("clamped_points=" + std::to_string(clamped));
    return t;
}

Table cmd_transition(const RunConfig& cfg, bool require) {
    const auto params = system_params(cfg);
    Table t;
    t.columns = {"scheme", "star_value", "residual", "estimate"};
    for (auto family : {SchemeFamily::Pulsed, SchemeFamily::Continuous, SchemeFamily::Rabi}) {
        try {
            const auto r = find_transition(params, family);
            t.rows.push_back({to_string(family), format_number(r.star_value), format_number(r.residual),
                              format_number(r.estimate)});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoTransition) throw;
            t.rows.push_back({to_string(family), "NO_TRANSITION", "", ""});
            if (require && family == cfg.scheme) t.exit_code = 3;
        }
    }
    return t;
}

Table cmd_oracle(const RunConfig& cfg) {
    const auto params = system_params(cfg);
    const auto bath = oracle::discretize(params.form_factor, cfg.n_modes);
    const auto h = oracle::build_hamiltonian(params, oracle::HamiltonianKind::bare(), bath);
    RunConfig run = cfg;
    if (!cfg.horizon_set) run.horizon = std::min(cfg.horizon, bath.recurrence_guard());
    const auto times = time_grid(run);
    const auto amps = oracle::evolve_survival(h, times);
    Table t;
    t.columns = {"t", "P_analytic", "P_oracle", "abs_diff"};
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double pa = survival_probability(params, times[i]);
        const double po = std::norm(amps[i]);
        const double d = std::abs(po - pa);
        worst = std::max(worst, d);
        t.rows.push_back({format_number(times[i]), format_number(pa), format_number(po), format_number(d)});
    }
    t.footer.push_back("horizon=" + format_number(run.horizon));
    t.footer.push_back("max_abs_diff=" + format_number(worst) + " n_modes=" + std::to_string(cfg.n_modes));
    if (!(worst <= kOracleTolerance)) t.exit_code = 2;
    return t;
}

namespace {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Io: return 1;
    case ErrorKind::NoTransition: return 3;
    default: return 2;
    }
}

struct Flags {
    std::string config;
    std::string svg;
    bool require = false;
    std::vector<std::optional<std::string>> values;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "config file with key = value lines");
    sub->add_option("--svg", f.svg, "also write a line chart to this path");
    const auto& keys = config_keys();
    f.values.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::string flag = "--" + keys[i];
        for (auto& ch : flag) {
            if (ch == '_') ch = '-';
        }
        sub->add_option_function<std::string>(
            flag, [&f, i](const std::string& v) { f.values[i] = v; }, "overrides config key " + keys[i]);
    }
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"zeno-lab: Zeno / inverse-Zeno dynamics of a decaying level"};
    app.require_subcommand(1);
    Flags flags;
    auto* survival = app.add_subcommand("survival", "survival probability P(t) with its pole approximations");
    auto* rates = app.add_subcommand("rates", "effective decay rate over the control grid");
    auto* transition = app.add_subcommand("transition", "Zeno / inverse-Zeno transition per scheme");
    auto* oracle_cmd = app.add_subcommand("oracle", "discretized-bath check of the survival curve");
    for (auto* sub : {survival, rates, transition, oracle_cmd}) add_common(sub, flags);
    transition->add_flag("--require", flags.require, "exit 3 when the configured scheme has no transition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        RunConfig cfg;
        if (!flags.config.empty()) load_config_file(cfg, flags.config);
        const auto& keys = config_keys();
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (flags.values[i]) apply_setting(cfg, keys[i], *flags.values[i]);
        }
        validate(cfg);

        Table table;
        if (survival->parsed()) table = cmd_survival(cfg);
        else if (rates->parsed()) table = cmd_rates(cfg);
        else if (transition->parsed()) table = cmd_transition(cfg, flags.require);
        else table = cmd_oracle(cfg);

        write_output(cfg.output_path, render_csv(cfg, table));
        if (!flags.svg.empty()) {
            const bool log_x = rates->parsed() && cfg.grid_scale == GridScale::Log;
            write_output(flags.svg, render_svg(table, log_x));
        }
        if (table.exit_code == 2 && oracle_cmd->parsed()) {
            std::fprintf(stderr, "zeno-lab: %s exceeds %g\n", table.footer.back().c_str(), kOracleTolerance);
        } else if (table.exit_code == 3) {
            std::fprintf(stderr, "zeno-lab: no transition for the required scheme\n");
        }
        return table.exit_code;
    } catch (const Error& e) {
        std::fprintf(stderr, "zeno-lab: %s\n", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "zeno-lab: error: %s\n", e.what());
        return 2;
    }
}

} // namespace zeno::cli
