#include "zeno/measurement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "zeno/error.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/resolvent.hpp"
#include "zeno/spectral.hpp"

namespace zeno {

const char* to_string(SchemeFamily family) noexcept {
    switch (family) {
    case SchemeFamily::Pulsed: return "pulsed";
    case SchemeFamily::Continuous: return "continuous";
    case SchemeFamily::Rabi: return "rabi";
    }
    return "?";
}

const char* to_string(Regime regime) noexcept {
    switch (regime) {
    case Regime::QZE: return "QZE";
    case Regime::IZE: return "IZE";
    case Regime::Natural: return "NATURAL";
    }
    return "?";
}

SchemeFamily family_of(const MeasurementScheme& scheme) noexcept {
    return static_cast<SchemeFamily>(scheme.index());
}

Regime regime_of(double gamma_eff, double gamma) noexcept {
    if (gamma_eff < gamma * (1.0 - kRegimeTolerance)) return Regime::QZE;
    if (gamma_eff > gamma * (1.0 + kRegimeTolerance)) return Regime::IZE;
    return Regime::Natural;
}

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::Domain, std::string(name) + " must be positive and finite, got " +
                                           std::to_string(v));
    }
}

double pulsed_rate(double p, double tau) {
    // P <= 1 keeps the rate non-negative; roundoff above 1 is clamped.
    return std::max(0.0, -std::log(std::min(p, 1.0)) / tau);
}

} // namespace

double effective_rate_pulsed(const SystemParams& params, double tau) {
    require_positive(tau, "tau");
    const double p = survival_probability(params, tau);
    if (!(p > 0.0)) {
        throw Error(ErrorKind::InfiniteRate, "P(tau) = 0 at tau=" + std::to_string(tau));
    }
    return pulsed_rate(p, tau);
}

double survival_after_n(const SystemParams& params, double tau, long n) {
    require_positive(tau, "tau");
    if (n < 1) throw Error(ErrorKind::Domain, "measurement count must be >= 1");
    return std::pow(survival_probability(params, tau), static_cast<double>(n));
}

double effective_rate_continuous(const SystemParams& params, double big_gamma) {
    require_positive(big_gamma, "Gamma");
    if (const auto* lz = as_lorentzian(params)) {
        const double c = lz->big_lambda + 0.5 * big_gamma;
        const double w = params.omega_a;
        return 2.0 * lz->lambda * lz->lambda * c / (w * w + c * c);
    }
    return effective_rate_continuous_quadrature(params, big_gamma);
}

double effective_rate_continuous_quadrature(const SystemParams& params, double big_gamma) {
    require_positive(big_gamma, "Gamma");
    const double half = 0.5 * big_gamma;
    const double w0 = params.omega_a;
    const FormFactor& ff = params.form_factor;
    // (4/Gamma) kappa(w) (Gamma^2/4) / ((w-w0)^2 + Gamma^2/4) = Gamma kappa / (...)
    auto integrand = [&](double w) {
        const double d = w - w0;
        return big_gamma * evaluate_kappa(ff, w) / (d * d + half * half);
    };
    if (const auto* lz = as_lorentzian(params)) {
        // Peaks at the origin (width Lambda) and at omega_a (width Gamma/2).
        const double L = lz->big_lambda;
        std::vector<double> brk{-5.0 * L, -L, 0.0, L, 5.0 * L};
        for (double m : {-5.0, -1.0, 0.0, 1.0, 5.0}) brk.push_back(w0 + m * half);
        return quad::integrate_line_split(integrand, brk, std::max(L, half));
    }
    const auto& tab = std::get<Tabulated>(ff);
    std::vector<double> brk(tab.omega().begin(), tab.omega().end());
    return quad::trapezoid_refine(std::span<const double>(brk), integrand, 1e-8);
}

double effective_rate_rabi(const SystemParams& params, double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::Domain, "K must be finite and >= 0, got " + std::to_string(k));
    }
    const FormFactor& ff = params.form_factor;
    return std::numbers::pi *
           (evaluate_kappa(ff, params.omega_a + k) + evaluate_kappa(ff, params.omega_a - k));
}

double effective_rate(const SystemParams& params, const MeasurementScheme& scheme) {
    return std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Pulsed>) return effective_rate_pulsed(params, s.tau);
            else if constexpr (std::is_same_v<S, Continuous>)
                return effective_rate_continuous(params, s.big_gamma);
            else return effective_rate_rabi(params, s.k);
        },
        scheme);
}

MeasurementScheme make_scheme(SchemeFamily family, double control) {
    switch (family) {
    case SchemeFamily::Pulsed: return Pulsed{control};
    case SchemeFamily::Continuous: return Continuous{control};
    case SchemeFamily::Rabi: return Rabi{control};
    }
    return Pulsed{control};
}

double abscissa_of(SchemeFamily family, double control) noexcept {
    switch (family) {
    case SchemeFamily::Pulsed: return control;
    case SchemeFamily::Continuous: return 4.0 / control;
    case SchemeFamily::Rabi:
        return control == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / control;
    }
    return control;
}

DecayRateCurve sweep(const SystemParams& params, SchemeFamily family,
                     std::span<const double> grid) {
    if (grid.empty()) throw Error(ErrorKind::Domain, "sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::Domain, "sweep grid must be strictly increasing");
        }
    }
    DecayRateCurve curve;
    curve.family = family;
    switch (family) {
    case SchemeFamily::Pulsed: curve.control_label = "tau"; curve.abscissa_label = "tau"; break;
    case SchemeFamily::Continuous: curve.control_label = "Gamma"; curve.abscissa_label = "4/Gamma"; break;
    case SchemeFamily::Rabi: curve.control_label = "K"; curve.abscissa_label = "1/K"; break;
    }
    curve.gamma = golden_rule_gamma(params);
    curve.points.reserve(grid.size());
    for (double x : grid) {
        CurvePoint pt{x, abscissa_of(family, x), 0.0, 0.0, Regime::Natural};
        try {
            if (family == SchemeFamily::Pulsed) {
                require_positive(x, "tau");
                double p = survival_probability(params, x);
                if (p < kProbabilityFloor) {
                    p = kProbabilityFloor;
                    pt.clamped = true;
                }
                pt.gamma_eff = pulsed_rate(p, x);
            } else {
                pt.gamma_eff = effective_rate(params, make_scheme(family, x));
            }
        } catch (const Error& e) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "sweep point " << curve.control_label << "=" << x << ": " << e.what();
            throw Error(e.kind(), msg.str());
        }
        pt.ratio = curve.gamma > 0.0 ? pt.gamma_eff / curve.gamma
                                     : std::numeric_limits<double>::quiet_NaN();
        pt.regime = regime_of(pt.gamma_eff, curve.gamma);
        curve.points.push_back(pt);
    }
    return curve;
}

} // namespace zeno
