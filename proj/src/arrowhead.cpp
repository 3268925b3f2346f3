#include "zeno/arrowhead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "zeno/error.hpp"
#include "zeno/kernels.hpp"

namespace zeno::oracle {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

ArrowheadSpectrum::ArrowheadSpectrum(double alpha, std::span<const double> poles,
                                     std::span<const double> couplings)
    : alpha_(alpha) {
    if (poles.size() != couplings.size()) {
        throw Error(ErrorKind::Domain, "arrowhead: pole/coupling size mismatch");
    }
    std::vector<std::size_t> order(poles.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return poles[a] < poles[b]; });

    // Deflation: decoupled modes and coincident poles.
    std::vector<double> decoupled;
    double scale = std::abs(alpha);
    for (std::size_t i = 0; i < poles.size(); ++i) scale = std::max(scale, std::abs(poles[i]));
    for (std::size_t idx : order) {
        const double d = poles[idx];
        const double g = std::abs(couplings[idx]);
        if (!std::isfinite(d) || !std::isfinite(g)) {
            throw Error(ErrorKind::NumericalFailure, "arrowhead: non-finite input");
        }
        if (g == 0.0) {
            decoupled.push_back(d);
            continue;
        }
        if (!poles_.empty() && d - poles_.back() <= 4.0 * kEps * std::max(1.0, std::abs(d))) {
            // Rotate the pair so one combination carries the full coupling.
            g_.back() = std::hypot(g_.back(), g);
            decoupled.push_back(poles_.back());
            continue;
        }
        poles_.push_back(d);
        g_.push_back(g);
    }
    g2_.resize(g_.size());
    for (std::size_t i = 0; i < g_.size(); ++i) g2_[i] = g_[i] * g_[i];

    const std::size_t m = poles_.size();
    const double gnorm = std::sqrt(std::accumulate(g2_.begin(), g2_.end(), 0.0));

    std::vector<double> off(m);
    std::vector<double> w_other(m);

    // Secular function expressed around origin pole o: E = d_o + delta.
    auto solve_root = [&](std::size_t o, double lo, double hi) {
        for (std::size_t k = 0; k < m; ++k) off[k] = poles_[o] - poles_[k];
        std::copy(g2_.begin(), g2_.end(), w_other.begin());
        const double go2 = g2_[o];
        w_other[o] = 0.0;
        off[o] = 1.0; // finite placeholder, weight zero
        const double base = poles_[o] - alpha_;
        // phi(delta) = delta * f(delta) = -g_o^2 + delta * psi(delta),
        // psi(delta) = base + delta - sum_{k != o} g_k^2 / (off_k + delta).
        // sign(f) = sign(phi) * sign(delta); lo/hi bracket with f(lo) < 0 < f(hi).
        auto eval = [&](double delta, double& f, double& phi, double& dphi) {
            const auto s = kernels::secular_sums(off, w_other, delta);
            const double psi = base + delta - s.s1;
            const double dpsi = 1.0 + s.s2;
            phi = -go2 + delta * psi;
            dphi = psi + delta * dpsi;
            f = (delta != 0.0) ? phi / delta : -std::numeric_limits<double>::infinity();
        };
        double x = 0.5 * (lo + hi);
        double f, phi, dphi;
        for (int it = 0; it < 200; ++it) {
            ++iterations_;
            eval(x, f, phi, dphi);
            if (f < 0.0) lo = x;
            else if (f > 0.0) hi = x;
            else return x;
            double next = x - phi / dphi;
            if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
            const double tol = 2.0 * kEps * std::max(std::abs(x), std::abs(next));
            if (std::abs(next - x) <= tol || !(hi - lo > 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)))) {
                return next;
            }
            x = next;
        }
        return x;
    };

    std::vector<double> neg_poles(m);
    for (std::size_t k = 0; k < m; ++k) neg_poles[k] = -poles_[k];
    auto f_at = [&](double e) { return e - alpha_ - kernels::secular_sums(neg_poles, g2_, e).s1; };

    energies_.reserve(m + 1 + decoupled.size());
    if (m == 0) {
        energies_.push_back(alpha_);
        weights_.push_back(1.0);
        origin_.push_back(kNone);
        delta_.push_back(0.0);
    } else {
        // Lowest root, below the first pole.
        {
            const double floor = std::min(alpha_, poles_[0]) - gnorm - 1.0;
            const double lo = floor - poles_[0];
            energies_.push_back(0.0);
            origin_.push_back(0);
            delta_.push_back(solve_root(0, lo, 0.0));
        }
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double mid = 0.5 * (poles_[i] + poles_[i + 1]);
            const double gap = poles_[i + 1] - poles_[i];
            if (f_at(mid) >= 0.0) {
                energies_.push_back(0.0);
                origin_.push_back(i);
                delta_.push_back(solve_root(i, 0.0, mid - poles_[i] > 0.0 ? mid - poles_[i] : 0.5 * gap));
            } else {
                energies_.push_back(0.0);
                origin_.push_back(i + 1);
                delta_.push_back(solve_root(i + 1, mid - poles_[i + 1], 0.0));
            }
        }
        {
            const double ceil = std::max(alpha_, poles_[m - 1]) + gnorm + 1.0;
            energies_.push_back(0.0);
            origin_.push_back(m - 1);
            delta_.push_back(solve_root(m - 1, 0.0, ceil - poles_[m - 1]));
        }
        weights_.resize(energies_.size());
        for (std::size_t n = 0; n < energies_.size(); ++n) {
            const std::size_t o = origin_[n];
            const double delta = delta_[n];
            energies_[n] = poles_[o] + delta;
            double s2 = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                if (k == o) continue;
                const double x = (poles_[o] - poles_[k]) + delta;
                s2 += g2_[k] / (x * x);
            }
            // 1 / (1 + s2 + g_o^2/delta^2), arranged to stay finite as delta -> 0.
            const double d2 = delta * delta;
            weights_[n] = d2 / (d2 * (1.0 + s2) + g2_[o]);
        }
    }
    for (double d : decoupled) {
        energies_.push_back(d);
        weights_.push_back(0.0);
        origin_.push_back(kNone);
        delta_.push_back(0.0);
    }
}

double ArrowheadSpectrum::mode_component(std::size_t j, std::size_t n) const {
    const std::size_t o = origin_.at(n);
    if (o == kNone || poles_.empty()) return 0.0;
    const double x = (poles_[o] - poles_[j]) + delta_[n];
    return std::sqrt(weights_[n]) * g_[j] / x;
}

} // namespace zeno::oracle
