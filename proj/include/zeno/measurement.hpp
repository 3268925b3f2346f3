// measurement.hpp: effective decay rates under pulsed, continuous and Rabi monitoring

#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zeno/form_factor.hpp"

namespace zeno {

struct Pulsed {
    double tau;
};
struct Continuous {
    double big_gamma;
};
struct Rabi {
    double k;
};

using MeasurementScheme = std::variant<Pulsed, Continuous, Rabi>;

enum class SchemeFamily { Pulsed, Continuous, Rabi };
enum class Regime { QZE, IZE, Natural };

const char* to_string(SchemeFamily family) noexcept;
const char* to_string(Regime regime) noexcept;
SchemeFamily family_of(const MeasurementScheme& scheme) noexcept;

/// Relative band around gamma inside which a rate is tagged Natural.
inline constexpr double kRegimeTolerance = 1e-9;
/// Floor applied to P(tau) in sweeps before taking the log.
inline constexpr double kProbabilityFloor = 1e-300;

Regime regime_of(double gamma_eff, double gamma) noexcept;

/// -log P(tau) / tau. InfiniteRate when P(tau) underflows to zero.
double effective_rate_pulsed(const SystemParams& params, double tau);

/// P(tau)^n.
double survival_after_n(const SystemParams& params, double tau, long n);

/// Lorentzian-kernel average of kappa around omega_a with half-width Gamma/2;
/// closed form for the Lorentzian, quadrature otherwise.
double effective_rate_continuous(const SystemParams& params, double big_gamma);
double effective_rate_continuous_quadrature(const SystemParams& params, double big_gamma);

/// pi [kappa(omega_a + K) + kappa(omega_a - K)].
double effective_rate_rabi(const SystemParams& params, double k);

double effective_rate(const SystemParams& params, const MeasurementScheme& scheme);

struct CurvePoint {
    double control;
    double abscissa; // tau, 4/Gamma or 1/K (K = 0 maps to +inf)
    double gamma_eff;
    double ratio;    // gamma_eff / gamma
    Regime regime;
    bool clamped = false; // P(tau) hit kProbabilityFloor
};

struct DecayRateCurve {
    SchemeFamily family;
    std::string control_label;  // "tau", "Gamma" or "K"
    std::string abscissa_label; // "tau", "4/Gamma" or "1/K"
    double gamma = 0.0;         // natural (golden-rule) rate the ratios refer to
    std::vector<CurvePoint> points; // grid order
};

MeasurementScheme make_scheme(SchemeFamily family, double control);
double abscissa_of(SchemeFamily family, double control) noexcept;

/// Evaluates the family's rate at each grid value (strictly increasing).
/// Point failures are rethrown with the offending grid value in the message.
DecayRateCurve sweep(const SystemParams& params, SchemeFamily family,
                     std::span<const double> grid);

} // namespace zeno
