// resolvent.hpp: self-energy on both sheets, the decay pole, survival amplitude

#pragma once

#include <array>
#include <complex>

#include "zeno/form_factor.hpp"

namespace zeno {

using cplx = std::complex<double>;

struct ComplexEnergy {
    double re = 0.0;
    double im = 0.0;

    constexpr ComplexEnergy() = default;
    constexpr ComplexEnergy(double r, double i) : re(r), im(i) {}
    ComplexEnergy(cplx z) : re(z.real()), im(z.imag()) {}
    cplx value() const { return {re, im}; }
};

enum class Sheet { First, Second };

struct PoleResult {
    ComplexEnergy e_pole;
    double delta_omega = 0.0;  // Re E_pole - omega_a
    double gamma_pole = 0.0;   // -2 Im E_pole
    double z_renorm = 1.0;     // |1 - Sigma'_II(E_pole)|^-2
    cplx residue{1.0, 0.0};    // amplitude prefactor of the pole term
    ComplexEnergy e_other;     // companion root of the Lorentzian quadratic
    int newton_iterations = 0;
};

/// Off-axis offset used for real-axis "i0+" limits, in units of Lambda.
inline constexpr double kRealAxisOffset = 1e-8;

/// First sheet: int kappa(w)/(E - w) dw, real axis taken from above.
/// Second sheet: continuation of the upper-half-plane branch (Lorentzian only).
cplx self_energy(const SystemParams& params, ComplexEnergy e, Sheet sheet);

/// d Sigma / dE on the second sheet (analytic, Lorentzian only).
cplx self_energy_derivative(const SystemParams& params, ComplexEnergy e);

/// Direct numerical quadrature of the first-sheet integral, E off the real axis.
cplx self_energy_quadrature(const SystemParams& params, ComplexEnergy e);

/// Both roots of (E - omega_a)(E + i Lambda) - lambda^2 = 0.
std::array<cplx, 2> lorentzian_poles(const SystemParams& params);

/// Newton solve of E - omega_a - Sigma_II(E) = 0 from the perturbative seed.
PoleResult find_pole(const SystemParams& params);

/// Exact two-pole amplitude <a|exp(-iHt)|a> of the Lorentzian model.
cplx survival_amplitude(const SystemParams& params, double t);

/// |survival_amplitude|^2 clamped to [0, 1].
double survival_probability(const SystemParams& params, double t);

} // namespace zeno
