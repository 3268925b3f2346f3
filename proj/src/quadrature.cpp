#include "zeno/quadrature.hpp"

namespace zeno::quad {

Rule gauss_legendre(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::Domain, "Gauss-Legendre rule needs n >= 1");
    Rule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < half; ++i) {
        // Root i counted from the right end.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        if (n % 2 == 1 && i == half - 1) x = 0.0;
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double dk = static_cast<double>(k);
            const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) {
            dp = 1.0;
        } else {
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    return rule;
}

} // namespace zeno::quad
