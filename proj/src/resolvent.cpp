#include "zeno/resolvent.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "zeno/error.hpp"
#include "zeno/quadrature.hpp"

namespace zeno {

namespace {

constexpr cplx I{0.0, 1.0};

const Lorentzian& require_lorentzian(const SystemParams& params, const char* what) {
    const auto* lz = as_lorentzian(params);
    if (lz == nullptr) {
        throw Error(ErrorKind::UnsupportedContinuation,
                    std::string(what) + " requires the Lorentzian form factor");
    }
    return *lz;
}

cplx second_sheet(const Lorentzian& lz, cplx e) {
    const cplx denom = e + I * lz.big_lambda;
    if (std::abs(denom) <= 1e-15 * lz.big_lambda) {
        throw Error(ErrorKind::Singularity, "self-energy evaluated at its pole E = -i Lambda");
    }
    return lz.lambda * lz.lambda / denom;
}

} // namespace

cplx self_energy(const SystemParams& params, ComplexEnergy e, Sheet sheet) {
    const cplx z = e.value();
    if (const auto* lz = as_lorentzian(params)) {
        if (sheet == Sheet::Second || e.im >= 0.0) return second_sheet(*lz, z);
        return lz->lambda * lz->lambda / (z - I * lz->big_lambda);
    }
    if (sheet == Sheet::Second) {
        throw Error(ErrorKind::UnsupportedContinuation,
                    "second-sheet self-energy is only available for the Lorentzian form factor");
    }
    return self_energy_quadrature(params, e);
}

cplx self_energy_derivative(const SystemParams& params, ComplexEnergy e) {
    const auto& lz = require_lorentzian(params, "self-energy derivative");
    const cplx denom = e.value() + I * lz.big_lambda;
    if (std::abs(denom) <= 1e-15 * lz.big_lambda) {
        throw Error(ErrorKind::Singularity, "self-energy derivative at E = -i Lambda");
    }
    return -lz.lambda * lz.lambda / (denom * denom);
}

cplx self_energy_quadrature(const SystemParams& params, ComplexEnergy e) {
    const cplx z = e.value();
    if (const auto* lz = as_lorentzian(params)) {
        auto f = [&](double w) { return evaluate_kappa(params.form_factor, w) / (z - w); };
        const double L = lz->big_lambda;
        const double width = std::max(std::abs(e.im), 1e-300);
        std::vector<double> brk{-5.0 * L, -L, 0.0, L, 5.0 * L};
        for (double m : {-5.0, -1.0, 0.0, 1.0, 5.0}) brk.push_back(e.re + m * width);
        return quad::integrate_line_split(f, brk, std::max(L, width));
    }
    const auto& tab = std::get<Tabulated>(params.form_factor);
    const auto w = tab.omega();
    return quad::trapezoid_refine(w, [&](double x) { return tab(x) / (z - x); }, 1e-8);
}

std::array<cplx, 2> lorentzian_poles(const SystemParams& params) {
    const auto& lz = require_lorentzian(params, "pole location");
    const double wa = params.omega_a;
    const double L = lz.big_lambda;
    // E^2 + b E + c = 0
    const cplx b{-wa, L};
    const cplx c{-lz.lambda * lz.lambda, -L * wa};
    const cplx disc = std::sqrt(cplx{wa, L} * cplx{wa, L} + 4.0 * lz.lambda * lz.lambda);
    // Pick the sign that avoids cancellation, then use Vieta for the partner.
    const cplx qa = -0.5 * (b + disc);
    const cplx qb = -0.5 * (b - disc);
    const cplx q = std::abs(qa) >= std::abs(qb) ? qa : qb;
    if (q == cplx{}) return {cplx{}, cplx{}};
    return {q, c / q};
}

PoleResult find_pole(const SystemParams& params) {
    const auto& lz = require_lorentzian(params, "find_pole");
    const double wa = params.omega_a;
    cplx e = wa + self_energy(params, {wa, kRealAxisOffset * lz.big_lambda}, Sheet::Second);

    int iter = 0;
    bool converged = false;
    for (; iter < 100; ++iter) {
        const cplx f = e - wa - second_sheet(lz, e);
        const cplx df = 1.0 - self_energy_derivative(params, e);
        if (df == cplx{}) break;
        const cplx step = f / df;
        e -= step;
        if (std::abs(step) < 1e-13) {
            converged = true;
            ++iter;
            break;
        }
    }
    if (!converged) {
        throw Error(ErrorKind::NumericalFailure, "pole search: Newton did not converge in 100 iterations");
    }
    const bool coupled = lz.lambda > 0.0;
    if (coupled && !(e.imag() < 0.0)) {
        throw Error(ErrorKind::ModelRegime, "pole found with Im E >= 0");
    }
    if (!coupled) e = wa;

    PoleResult out;
    out.e_pole = e;
    out.delta_omega = e.real() - wa;
    out.gamma_pole = -2.0 * e.imag();
    // Vieta: E_pole + E_other = omega_a - i Lambda.
    const cplx other = cplx{wa, -lz.big_lambda} - e;
    out.e_other = other;
    const cplx one_minus = 1.0 - self_energy_derivative(params, e);
    out.z_renorm = 1.0 / std::norm(one_minus);
    out.residue = (e + I * lz.big_lambda) / (e - other);
    out.newton_iterations = iter;
    return out;
}

cplx survival_amplitude(const SystemParams& params, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw Error(ErrorKind::Domain, "survival amplitude needs t >= 0, got " + std::to_string(t));
    }
    const auto& lz = require_lorentzian(params, "survival amplitude");
    if (t == 0.0) return {1.0, 0.0};
    const auto roots = lorentzian_poles(params);
    const cplx iL{0.0, lz.big_lambda};
    const cplx gap = roots[0] - roots[1];
    const double scale = std::abs(roots[0]) + std::abs(roots[1]) + lz.big_lambda;
    if (std::abs(gap) < 1e-8 * scale) {
        // Coalescing roots: derivative of exp(-iEt)(E + i Lambda) at the double root.
        const cplx e0 = 0.5 * (roots[0] + roots[1]);
        return std::exp(-I * e0 * t) * (1.0 - I * t * (e0 + iL));
    }
    const cplx r0 = (roots[0] + iL) / gap;
    const cplx r1 = (roots[1] + iL) / (-gap);
    return r0 * std::exp(-I * roots[0] * t) + r1 * std::exp(-I * roots[1] * t);
}

double survival_probability(const SystemParams& params, double t) {
    const double p = std::norm(survival_amplitude(params, t));
    return std::min(1.0, std::max(0.0, p));
}

} // namespace zeno
