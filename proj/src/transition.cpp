#include "zeno/transition.hpp"

#include <cmath>
#include <functional>

#include "zeno/error.hpp"
#include "zeno/resolvent.hpp"
#include "zeno/spectral.hpp"

namespace zeno {

namespace {

const Lorentzian& require_lorentzian(const SystemParams& params, const char* what) {
    const auto* lz = as_lorentzian(params);
    if (lz == nullptr) {
        throw Error(ErrorKind::UnsupportedContinuation,
                    std::string(what) + " requires the Lorentzian form factor");
    }
    return *lz;
}

double positive_gamma(const SystemParams& params) {
    const double g = golden_rule_gamma(params);
    if (!(g > 0.0)) throw Error(ErrorKind::NoTransition, "natural decay rate is zero");
    return g;
}

// f(lo) > 0 >= f(hi) held throughout; stops at relative width rel_tol or when the
// midpoint no longer moves.
double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        if (f(mid) > 0.0) lo = mid;
        else hi = mid;
        if (std::abs(hi - lo) <= rel_tol * std::abs(mid)) break;
    }
    // Return whichever end has the smaller residual.
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// tau_Z^2 gamma = 2 pi kappa(omega_a) / int kappa; lambda cancels for the
// Lorentzian, leaving 2 Lambda / (omega_a^2 + Lambda^2).
double first_order_tau(const SystemParams& params, double gamma) {
    if (const auto* lz = as_lorentzian(params)) {
        const double L = lz->big_lambda;
        return 2.0 * L / (params.omega_a * params.omega_a + L * L);
    }
    const double tz = zeno_time(params);
    return tz * tz * gamma;
}

} // namespace

TransitionResult find_transition_pulsed(const SystemParams& params) {
    require_lorentzian(params, "pulsed transition");
    const double gamma = positive_gamma(params);
    const double seed = first_order_tau(params, gamma);
    auto f = [&](double tau) { return survival_probability(params, tau) - std::exp(-gamma * tau); };

    double lo = seed / 64.0;
    // Walk down until the quadratic (QZE) side is reached.
    int guard = 0;
    while (!(f(lo) > 0.0) && guard++ < 40) lo *= 0.5;
    if (!(f(lo) > 0.0)) {
        throw Error(ErrorKind::NoTransition, "P(tau) never exceeds exp(-gamma tau) at short tau");
    }
    const double limit = 100.0 / gamma;
    double hi = lo;
    for (;;) {
        const double next = hi * 2.0;
        if (next > limit) {
            if (hi < limit && !(f(limit) > 0.0)) {
                hi = limit;
                break;
            }
            throw Error(ErrorKind::NoTransition,
                        "no crossing of P(tau) with exp(-gamma tau) up to tau=" +
                            std::to_string(limit));
        }
        if (!(f(next) > 0.0)) {
            lo = hi;
            hi = next;
            break;
        }
        hi = next;
    }
    const double star = bisect(f, lo, hi, 1e-10);
    return {SchemeFamily::Pulsed, star, std::abs(f(star)), seed};
}

TransitionResult find_transition_continuous(const SystemParams& params) {
    const auto& lz = require_lorentzian(params, "continuous transition");
    const double gamma = positive_gamma(params);
    const double wa = params.omega_a;
    const double L = lz.big_lambda;
    if (!(wa * wa > L * L)) {
        throw Error(ErrorKind::NoTransition,
                    "continuous monitoring has no IZE region when |omega_a| <= Lambda");
    }
    const double star = 2.0 * (wa * wa - L * L) / L;
    return {SchemeFamily::Continuous, star, std::abs(effective_rate_continuous(params, star) - gamma),
            4.0 / first_order_tau(params, gamma)};
}

double bisect_transition_continuous(const SystemParams& params) {
    const auto& lz = require_lorentzian(params, "continuous transition");
    const double gamma = positive_gamma(params);
    auto f = [&](double g) { return effective_rate_continuous(params, g) - gamma; };
    double lo = lz.big_lambda * 1e-3;
    if (!(f(lo) > 0.0)) throw Error(ErrorKind::NoTransition, "no IZE region at small Gamma");
    double hi = lo;
    int steps = 0;
    while (f(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++steps > 200) throw Error(ErrorKind::NoTransition, "no continuous crossing found");
    }
    return bisect(f, lo, hi, 1e-15);
}

TransitionResult find_transition_rabi(const SystemParams& params) {
    const auto& lz = require_lorentzian(params, "Rabi transition");
    const double gamma = positive_gamma(params);
    const double scale = std::max(std::abs(params.omega_a), lz.big_lambda);
    auto f = [&](double k) { return effective_rate_rabi(params, k) - gamma; };
    const double above = gamma * kRegimeTolerance;

    const double step = scale / 16.0;
    double start = std::abs(params.omega_a);
    if (!(f(start) > above)) {
        // Look below omega_a for an IZE point; K = 0 itself is the trivial root.
        double k = start - step;
        while (k > 0.0 && !(f(k) > above)) k -= step;
        if (!(k > 0.0)) {
            throw Error(ErrorKind::NoTransition, "Rabi rate never exceeds gamma for K > 0");
        }
        start = k;
    }
    const double limit = 1e3 * scale;
    double lo = start;
    double hi = start;
    while (f(hi) > 0.0) {
        lo = hi;
        hi += step;
        if (hi > limit) {
            throw Error(ErrorKind::NoTransition,
                        "no Rabi crossing up to K=" + std::to_string(limit));
        }
    }
    const double star = bisect(f, lo, hi, 1e-15);
    return {SchemeFamily::Rabi, star, std::abs(f(star)), 0.5 * (lo + hi)};
}

TransitionResult find_transition(const SystemParams& params, SchemeFamily family) {
    switch (family) {
    case SchemeFamily::Pulsed: return find_transition_pulsed(params);
    case SchemeFamily::Continuous: return find_transition_continuous(params);
    case SchemeFamily::Rabi: return find_transition_rabi(params);
    }
    throw Error(ErrorKind::Domain, "unknown scheme family");
}

Regime classify(const SystemParams& params, const MeasurementScheme& scheme) {
    return regime_of(effective_rate(params, scheme), golden_rule_gamma(params));
}

} // namespace zeno
