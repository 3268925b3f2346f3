// transition.hpp: the QZE/IZE crossing for each measurement scheme

#pragma once

#include "zeno/form_factor.hpp"
#include "zeno/measurement.hpp"

namespace zeno {

struct TransitionResult {
    SchemeFamily family;
    double star_value = 0.0; // tau*, Gamma* or K*
    double residual = 0.0;   // |gamma_eff(star) - gamma| (pulsed: |P(tau*) - exp(-gamma tau*)|)
    double estimate = 0.0;   // first-order / scan-based prediction
};

/// Smallest tau > 0 with P(tau) = exp(-gamma tau). NoTransition when no sign
/// change is found up to tau = 100/gamma.
TransitionResult find_transition_pulsed(const SystemParams& params);

/// Gamma* from the closed form 2 (omega_a^2 - Lambda^2) / Lambda; NoTransition
/// when omega_a <= Lambda.
TransitionResult find_transition_continuous(const SystemParams& params);

/// Gamma* by bracketing + bisection on effective_rate_continuous - gamma.
double bisect_transition_continuous(const SystemParams& params);

/// Largest K > 0 with effective_rate_rabi(K) = gamma.
TransitionResult find_transition_rabi(const SystemParams& params);

TransitionResult find_transition(const SystemParams& params, SchemeFamily family);

Regime classify(const SystemParams& params, const MeasurementScheme& scheme);

} // namespace zeno
