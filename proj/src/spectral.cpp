#include "zeno/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "zeno/error.hpp"
#include "zeno/quadrature.hpp"

namespace zeno {

namespace {

constexpr double kTrapezoidTol = 1e-8;

double tabulated_integral(const Tabulated& tab) {
    const auto w = tab.omega();
    const auto k = tab.kappa();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) sum += 0.5 * (k[i] + k[i + 1]) * (w[i + 1] - w[i]);
    return sum;
}

// P int_a^b kappa(w)/(w0 - w) dw for a tabulated kappa. The window symmetric
// about w0 is folded onto s = |w - w0|, where the kappa(w0) pieces cancel.
double tabulated_principal_value(const Tabulated& tab, double w0) {
    const double a = tab.lower();
    const double b = tab.upper();
    auto direct = [&](double lo, double hi) {
        std::vector<double> brk{lo};
        for (double w : tab.omega()) {
            if (w > lo && w < hi) brk.push_back(w);
        }
        brk.push_back(hi);
        return quad::trapezoid_refine(std::span<const double>(brk),
                                      [&](double w) { return tab(w) / (w0 - w); }, kTrapezoidTol);
    };
    if (w0 <= a || w0 >= b) {
        if (w0 == a || w0 == b) {
            throw Error(ErrorKind::NumericalFailure,
                        "principal value at the edge of the tabulated support diverges");
        }
        return direct(a, b);
    }
    const double m = std::min(w0 - a, b - w0);

    // Left/right slopes at w0 give the s -> 0 limit of the folded integrand.
    const auto ws = tab.omega();
    const auto ks = tab.kappa();
    auto slope_at = [&](double w, bool from_left) {
        auto it = from_left ? std::lower_bound(ws.begin(), ws.end(), w)
                            : std::upper_bound(ws.begin(), ws.end(), w);
        std::size_t hi = static_cast<std::size_t>(it - ws.begin());
        hi = std::clamp<std::size_t>(hi, 1, ws.size() - 1);
        return (ks[hi] - ks[hi - 1]) / (ws[hi] - ws[hi - 1]);
    };
    const double limit0 = -(slope_at(w0, true) + slope_at(w0, false));

    std::vector<double> brk{0.0};
    for (double w : ws) {
        const double s = std::abs(w - w0);
        if (s > 0.0 && s < m) brk.push_back(s);
    }
    brk.push_back(m);
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    double folded = quad::trapezoid_refine(
        std::span<const double>(brk),
        [&](double s) {
            if (s == 0.0) return limit0;
            return (tab(w0 - s) - tab(w0 + s)) / s;
        },
        kTrapezoidTol);

    double rest = 0.0;
    if (w0 + m < b) rest = direct(w0 + m, b);
    else if (w0 - m > a) rest = direct(a, w0 - m);
    return folded + rest;
}

} // namespace

double golden_rule_gamma(const SystemParams& params) {
    return 2.0 * std::numbers::pi * evaluate_kappa(params.form_factor, params.omega_a);
}

double energy_shift(const SystemParams& params) {
    if (const auto* lz = as_lorentzian(params)) {
        const double w = params.omega_a;
        return lz->lambda * lz->lambda * w / (w * w + lz->big_lambda * lz->big_lambda);
    }
    return energy_shift_quadrature(params);
}

double energy_shift_quadrature(const SystemParams& params) {
    const double w0 = params.omega_a;
    if (const auto* lz = as_lorentzian(params)) {
        // Fold onto s in [0, inf) and map s = L u / (1 - u).
        const double scale = lz->big_lambda;
        const FormFactor& ff = params.form_factor;
        auto integrand = [&](double u) {
            if (u >= 1.0) return 0.0;
            const double s = scale * u / (1.0 - u);
            const double jac = scale / ((1.0 - u) * (1.0 - u));
            if (s == 0.0) {
                // -2 kappa'(w0)
                const double l2 = scale * scale;
                const double k0 = evaluate_kappa(ff, w0);
                return 4.0 * w0 * k0 / (w0 * w0 + l2) * jac;
            }
            return (evaluate_kappa(ff, w0 - s) - evaluate_kappa(ff, w0 + s)) / s * jac;
        };
        return quad::integrate_adaptive(integrand, 0.0, 1.0, 1e-13, 1e-300);
    }
    return tabulated_principal_value(std::get<Tabulated>(params.form_factor), w0);
}

double kappa_integral(const FormFactor& ff) {
    if (const auto* lz = std::get_if<Lorentzian>(&ff)) return lz->lambda * lz->lambda;
    return tabulated_integral(std::get<Tabulated>(ff));
}

double kappa_integral_quadrature(const FormFactor& ff) {
    if (const auto* lz = std::get_if<Lorentzian>(&ff)) {
        return quad::integrate_real_line([&](double w) { return evaluate_kappa(ff, w); },
                                         lz->big_lambda, 0.0, 1e-13, 1e-300);
    }
    return tabulated_integral(std::get<Tabulated>(ff));
}

namespace {
double zeno_time_from(double integral) {
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw Error(ErrorKind::DegenerateSystem,
                    "Zeno time undefined: int kappa = " + std::to_string(integral));
    }
    return 1.0 / std::sqrt(integral);
}
} // namespace

double zeno_time(const SystemParams& params) {
    return zeno_time_from(kappa_integral(params.form_factor));
}

double zeno_time_quadrature(const SystemParams& params) {
    return zeno_time_from(kappa_integral_quadrature(params.form_factor));
}

} // namespace zeno
