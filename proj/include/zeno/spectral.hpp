// spectral.hpp: golden-rule rate, second-order shift, Zeno time
//
// Every quantity has a closed form for the Lorentzian; the *_quadrature
// variants integrate the form factor numerically and serve as cross-checks
// (and as the only path for tabulated form factors).

#pragma once

#include "zeno/form_factor.hpp"

namespace zeno {

/// gamma = 2 pi kappa(omega_a).
double golden_rule_gamma(const SystemParams& params);

/// Principal value P int kappa(w) / (omega_a - w) dw.
double energy_shift(const SystemParams& params);
double energy_shift_quadrature(const SystemParams& params);

/// int kappa(w) dw  (= <a|H_I^2|a> = tau_Z^-2).
double kappa_integral(const FormFactor& ff);
double kappa_integral_quadrature(const FormFactor& ff);

/// tau_Z = (int kappa)^(-1/2); DegenerateSystem when the integral vanishes.
double zeno_time(const SystemParams& params);
double zeno_time_quadrature(const SystemParams& params);

} // namespace zeno
