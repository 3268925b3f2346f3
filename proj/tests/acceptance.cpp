// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned here.
// Usage: acceptance <path-to-zeno-lab>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/cli.hpp"
#include "zeno/error.hpp"
#include "zeno/measurement.hpp"
#include "zeno/oracle.hpp"
#include "zeno/resolvent.hpp"
#include "zeno/spectral.hpp"
#include "zeno/transition.hpp"

using namespace zeno;

namespace {

struct Check {
    std::string what;
    bool ok;
};

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

    void check(const std::string& what, bool ok) { checks_.push_back({what, ok}); }
    void within(const std::string& name, double value, double lo, double hi) {
        check(name + "=" + cli::format_number(value) + " in [" + cli::format_number(lo) + ", " +
                  cli::format_number(hi) + "]",
              value >= lo && value <= hi);
    }
    void near(const std::string& name, double value, double target, double tol) {
        check(name + "=" + cli::format_number(value) + " vs " + cli::format_number(target) + " +/- " +
                  cli::format_number(tol),
              std::abs(value - target) <= tol);
    }

    bool report() const {
        bool ok = !checks_.empty();
        for (const auto& c : checks_) ok = ok && c.ok;
        std::printf("%s %2d %s:", ok ? "PASS" : "FAIL", id_, title_.c_str());
        for (const auto& c : checks_) std::printf(" %s%s;", c.ok ? "" : "!! ", c.what.c_str());
        std::printf("\n");
        return ok;
    }

    void guard(const std::function<void(Criterion&)>& body) {
        try {
            body(*this);
        } catch (const std::exception& e) {
            check(std::string("exception: ") + e.what(), false);
        }
    }

private:
    int id_;
    std::string title_;
    std::vector<Check> checks_;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Independent K* bracket: scan the closed-form display upward from omega_a,
// then bisect. Written against kappa directly, not the transition module.
double own_rabi_star(const SystemParams& p) {
    const auto lz = std::get<Lorentzian>(p.form_factor);
    auto kappa = [&](double w) {
        return lz.lambda * lz.lambda * lz.big_lambda / (std::numbers::pi * (w * w + lz.big_lambda * lz.big_lambda));
    };
    auto f = [&](double k) { return kappa(p.omega_a + k) + kappa(p.omega_a - k) - 2.0 * kappa(p.omega_a); };
    double lo = p.omega_a, hi = p.omega_a;
    while (f(hi) > 0.0) {
        lo = hi;
        hi += 1e-3;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

int main(int argc, char** argv) {
    const auto started = std::chrono::steady_clock::now();
    const SystemParams ref = reference_params();
    const std::string lab = argc > 1 ? argv[1] : "zeno-lab";
    int failed = 0;
    auto run = [&](Criterion c, const std::function<void(Criterion&)>& body) {
        c.guard(body);
        failed += c.report() ? 0 : 1;
    };

    run({1, "golden rule"}, [&](Criterion& c) {
        const double g = golden_rule_gamma(ref);
        c.near("gamma", g, 0.002, 1e-15);
        SystemParams tab = ref;
        tab.form_factor = tabulate_lorentzian(Lorentzian{0.1, 1.0});
        const double gq = 2.0 * std::numbers::pi * evaluate_kappa(tab.form_factor, ref.omega_a);
        c.within("rel(closed, tabulated quadrature path)", rel(gq, g), 0.0, 1e-8);
        c.check("gamma == 2 pi kappa(omega_a)", g == 2.0 * std::numbers::pi * evaluate_kappa(ref.form_factor, 3.0));
    });

    run({2, "renormalization"}, [&](Criterion& c) { c.near("Z", find_pole(ref).z_renorm, 0.998, 1e-3); });

    run({3, "zeno time"}, [&](Criterion& c) {
        c.within("rel(tau_Z closed, 10)", rel(zeno_time(ref), 10.0), 0.0, 1e-8);
        c.within("rel(tau_Z quadrature, 10)", rel(zeno_time_quadrature(ref), 10.0), 0.0, 1e-6);
    });

    double tau_star = 0.0;
    run({4, "transition time"}, [&](Criterion& c) {
        const auto r = find_transition_pulsed(ref);
        tau_star = r.star_value;
        c.within("tau*", r.star_value, 0.15, 0.25);
        c.check("estimate tau_Z^2 gamma=" + cli::format_number(r.estimate) + " == 0.2", r.estimate == 0.2);
    });

    run({5, "pulsed short-tau law"}, [&](Criterion& c) {
        c.within("gamma_eff(0.01) tau_Z^2 / tau", effective_rate_pulsed(ref, 0.01) * 100.0 / 0.01, 0.99, 1.01);
    });

    run({6, "pulsed long-tau limit"}, [&](Criterion& c) {
        c.within("gamma_eff(5000)/gamma", effective_rate_pulsed(ref, 5000.0) / 0.002, 0.99, 1.01);
    });

    run({7, "pulsed peak"}, [&](Criterion& c) {
        double best = 0.0, at = 0.0;
        for (int i = 1; i <= 2000; ++i) {
            const double tau = tau_star * std::pow(20.0 / tau_star, i / 2000.0);
            const double g = effective_rate_pulsed(ref, tau);
            if (g > best) {
                best = g;
                at = tau;
            }
        }
        c.within("max gamma_eff / gamma", best / 0.002, 1.5, 2.5);
        c.check("at tau=" + cli::format_number(at), true);
    });

    run({8, "continuous rate"}, [&](Criterion& c) {
        c.near("gamma_eff(2) closed", effective_rate_continuous(ref, 2.0), 3.0769e-3, 1e-7);
        c.near("gamma_eff(2) quadrature", effective_rate_continuous_quadrature(ref, 2.0), 3.0769e-3, 1e-7);
        c.within("gamma_eff(1000) Gamma tau_Z^2 / 4", effective_rate_continuous(ref, 1000.0) * 1000.0 * 100.0 / 4.0,
                 0.99, 1.01);
        const double gs = find_transition_continuous(ref).star_value;
        c.check("Gamma*=" + cli::format_number(gs) + " == 16", gs == 16.0);
        c.within("rel(bisection Gamma*, 16)", rel(bisect_transition_continuous(ref), 16.0), 0.0, 1e-10);
        c.within("|4/Gamma* - tau*| / tau*", std::abs(4.0 / gs - tau_star) / tau_star, 0.0, 0.3);
    });

    run({9, "rabi rate"}, [&](Criterion& c) {
        c.check("gamma_eff(0) == gamma", effective_rate_rabi(ref, 0.0) == golden_rule_gamma(ref));
        c.near("gamma_eff(3)", effective_rate_rabi(ref, 3.0), 1.02703e-2, 1e-7);
        c.within("gamma_eff(100) tau_Z^2 K^2 / Lambda", effective_rate_rabi(ref, 100.0) * 100.0 * 1e4, 0.98, 1.02);
        const double ks = find_transition_rabi(ref).star_value;
        const double own = own_rabi_star(ref);
        c.near("K*", ks, 5.10, 0.05);
        c.near("own bracketing K*", own, ks, 1e-9);
    });

    run({10, "oracle equivalence"}, [&](Criterion& c) {
        using namespace zeno::oracle;
        const auto bath = discretize(ref.form_factor, kDefaultModes);
        const auto h = build_hamiltonian(ref, HamiltonianKind::bare(), bath);
        std::vector<double> times(5001);
        for (std::size_t i = 0; i < times.size(); ++i) times[i] = 0.1 * static_cast<double>(i);
        const auto amps = evolve_survival(h, times);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            worst = std::max(worst, std::abs(std::norm(amps[i]) - survival_probability(ref, times[i])));
        }
        c.within("bare max|P_oracle - P|", worst, 0.0, 1e-3);
        for (double g : {0.5, 2.0, 8.0}) {
            const double e = empirical_gamma_eff(ref, bath, Continuous{g});
            c.within("continuous G=" + cli::format_number(g) + " rel", rel(e, effective_rate_continuous(ref, g)), 0.0, 0.02);
        }
        for (double k : {1.0, 3.0, 10.0}) {
            const double e = empirical_gamma_eff(ref, bath, Rabi{k});
            c.within("rabi K=" + cli::format_number(k) + " rel", rel(e, effective_rate_rabi(ref, k)), 0.0, 0.03);
        }
        const SurvivalPropagator prop(h);
        for (auto [tau, n] : {std::pair{0.05, 100L}, std::pair{1.0, 5L}, std::pair{0.3, 40L}}) {
            const double one[] = {tau};
            const double power = std::pow(std::norm(prop.amplitudes(one).front()), static_cast<double>(n));
            c.within("|loop - |A|^2n| tau=" + cli::format_number(tau), std::abs(pulsed_run(ref, bath, tau, n) - power),
                     0.0, 1e-10);
        }
    });

    run({11, "regime classification"}, [&](Criterion& c) {
        c.check("pulsed 0.05 QZE", classify(ref, Pulsed{0.05}) == Regime::QZE);
        c.check("pulsed 1 IZE", classify(ref, Pulsed{1.0}) == Regime::IZE);
        c.check("rabi 3 IZE", classify(ref, Rabi{3.0}) == Regime::IZE);
        c.check("rabi 10 QZE", classify(ref, Rabi{10.0}) == Regime::QZE);
        cli::RunConfig cfg;
        const auto grid = cli::control_grid(cfg);
        const auto p = sweep(ref, SchemeFamily::Pulsed, grid);
        c.check("pulsed tau=1e-3 end QZE", p.points.front().regime == Regime::QZE);
        c.within("pulsed tau=1e3 ratio", p.points.back().ratio, 0.99, 1.01);
        const auto k = sweep(ref, SchemeFamily::Continuous, grid);
        c.check("continuous Gamma=1e3 end QZE", k.points.back().regime == Regime::QZE);
        c.within("continuous Gamma=1e-3 ratio", k.points.front().ratio, 0.99, 1.01);
        const auto r = sweep(ref, SchemeFamily::Rabi, grid);
        c.check("rabi K=1e3 end QZE", r.points.back().regime == Regime::QZE);
        c.within("rabi K=1e-3 ratio", r.points.front().ratio, 0.99, 1.01);
    });

    run({12, "determinism"}, [&](Criterion& c) {
        const auto dir = std::filesystem::temp_directory_path();
        const auto cfg = dir / "zeno_accept.cfg";
        {
            std::ofstream out(cfg);
            out << "omega_a = 3\nlambda = 0.1\nbig_lambda = 1\n";
        }
        for (const char* sub : {"survival", "rates", "transition", "oracle"}) {
            std::string first;
            bool same = true;
            const auto out = dir / "zeno_accept.csv";
            const std::string cmd = lab + " " + sub + " --config " + cfg.string() + " --out " + out.string();
            for (int rep = 0; rep < 2; ++rep) {
                std::filesystem::remove(out);
                if (std::system(cmd.c_str()) != 0) same = false;
                const auto text = slurp(out);
                if (rep == 0) first = text;
                else same = same && !text.empty() && text == first;
            }
            std::filesystem::remove(out);
            c.check(std::string(sub) + (same ? " identical" : " DIFFERS"), same);
        }
        std::filesystem::remove(cfg);
    });

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("acceptance: %d of 12 criteria failed (%.1f s)\n", failed, secs);
    return failed == 0 ? 0 : 1;
}
