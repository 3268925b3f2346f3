// quadrature.hpp: Gauss-Legendre rules, adaptive Gauss-Kronrod, refined trapezoid

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "zeno/error.hpp"

namespace zeno::quad {

struct Rule {
    std::vector<double> nodes;   // ascending in (-1, 1)
    std::vector<double> weights; // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on the three-term
/// recurrence, seeded by the Tricomi asymptotic guess).
Rule gauss_legendre(std::size_t n);

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// Kronrod 15-point extension of the 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
auto gk15(F& f, double a, double b) {
    using T = decltype(f(a));
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        kron += (f1 + f2) * kWgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
    }
    struct Out {
        T value;
        double error;
    };
    return Out{kron * h, magnitude((kron - gauss) * h)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval. Works for real
/// and complex integrands. Throws NumericalFailure when the tolerance is not met
/// within max_intervals subdivisions.
template <class F>
auto integrate_adaptive(F f, double a, double b, double rel_tol = 1e-12,
                        double abs_tol = 0.0, std::size_t max_intervals = 20000) {
    using T = decltype(f(a));
    struct Piece {
        double a, b;
        T value;
        double error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    std::priority_queue<Piece> heap;
    auto first = detail::gk15(f, a, b);
    heap.push({a, b, first.value, first.error});
    T total = first.value;
    double err = first.error;
    while (err > std::max(abs_tol, rel_tol * detail::magnitude(total))) {
        if (heap.size() >= max_intervals) {
            throw Error(ErrorKind::NumericalFailure,
                        "adaptive quadrature did not converge (error estimate " +
                            std::to_string(err) + ")");
        }
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw Error(ErrorKind::NumericalFailure, "adaptive quadrature interval underflow");
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        if (!(err >= 0.0)) err = 0.0;
    }
    // Re-sum from the pieces to shed the drift of the running update.
    T sum{};
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

/// Integral over the whole real line through omega = scale * tan(theta).
template <class F>
auto integrate_real_line(F f, double scale = 1.0, double center = 0.0, double rel_tol = 1e-12,
                         double abs_tol = 0.0) {
    auto mapped = [&](double theta) {
        const double c = std::cos(theta);
        const double omega = center + scale * std::tan(theta);
        return f(omega) * (scale / (c * c));
    };
    constexpr double half_pi = 0.5 * std::numbers::pi;
    // Split at the center so the peak never falls on an interval midpoint only.
    return integrate_adaptive(mapped, -half_pi, 0.0, rel_tol, abs_tol) +
           integrate_adaptive(mapped, 0.0, half_pi, rel_tol, abs_tol);
}

/// Integral over the real line split at the given points: finite pieces by
/// adaptive Gauss-Kronrod, the two tails by w = edge +/- scale * u / (1 - u).
template <class F>
auto integrate_line_split(F f, std::vector<double> breaks, double scale, double rel_tol = 1e-13,
                          double abs_tol = 1e-300) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    using T = decltype(f(breaks.front()));
    const double lo = breaks.front();
    const double hi = breaks.back();
    T sum{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        sum += integrate_adaptive(f, breaks[i], breaks[i + 1], rel_tol, abs_tol);
    }
    auto upper_tail = [&](double u) {
        if (u >= 1.0) return T{};
        const double d = 1.0 - u;
        return f(hi + scale * u / d) * (scale / (d * d));
    };
    auto lower_tail = [&](double u) {
        if (u >= 1.0) return T{};
        const double d = 1.0 - u;
        return f(lo - scale * u / d) * (scale / (d * d));
    };
    sum += integrate_adaptive(upper_tail, 0.0, 1.0, rel_tol, abs_tol);
    sum += integrate_adaptive(lower_tail, 0.0, 1.0, rel_tol, abs_tol);
    return sum;
}

/// Composite trapezoid over the segments [breaks[i], breaks[i+1]], each segment
/// bisected again at every level until two successive levels agree to rel_tol.
template <class F>
auto trapezoid_refine(std::span<const double> breaks, F f, double rel_tol = 1e-8,
                      int max_levels = 20) {
    using T = decltype(f(breaks[0]));
    if (breaks.size() < 2) return T{};
    const std::size_t nseg = breaks.size() - 1;
    std::vector<T> fb;
    fb.reserve(breaks.size());
    for (double x : breaks) fb.push_back(f(x));

    T previous{};
    for (std::size_t i = 0; i < nseg; ++i) {
        previous += (fb[i] + fb[i + 1]) * (0.5 * (breaks[i + 1] - breaks[i]));
    }
    for (int level = 1; level <= max_levels; ++level) {
        const std::size_t parts = std::size_t{1} << level; // sub-intervals per segment
        T fresh{};
        for (std::size_t i = 0; i < nseg; ++i) {
            const double a = breaks[i];
            const double h = (breaks[i + 1] - a) / static_cast<double>(parts);
            T seg{};
            for (std::size_t j = 1; j < parts; j += 2) seg += f(a + h * static_cast<double>(j));
            fresh += seg * h;
        }
        const T value = previous * 0.5 + fresh;
        const double change = detail::magnitude(value - previous);
        previous = value;
        if (change <= rel_tol * detail::magnitude(value) || change == 0.0) return value;
    }
    throw Error(ErrorKind::NumericalFailure,
                "trapezoid refinement did not reach relative tolerance after " +
                    std::to_string(max_levels) + " levels");
}

} // namespace zeno::quad
