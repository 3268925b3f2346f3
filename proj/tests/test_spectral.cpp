#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "zeno/error.hpp"
#include "zeno/form_factor.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/spectral.hpp"

using namespace zeno;
using doctest::Approx;

namespace {

SystemParams tabulated_reference() {
    SystemParams p = reference_params();
    p.form_factor = tabulate_lorentzian(Lorentzian{0.1, 1.0});
    return p;
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

} // namespace

TEST_CASE("lorentzian kappa closed form") {
    const FormFactor ff = Lorentzian{0.1, 1.0};
    CHECK(rel_close(evaluate_kappa(ff, 3.0), 1.0 / (1000.0 * std::numbers::pi), 1e-15));
    for (double w : {0.0, 0.3, 1.0, 7.5, 1e3}) CHECK(evaluate_kappa(ff, w) == evaluate_kappa(ff, -w));

    const auto tab = tabulate_lorentzian(Lorentzian{0.1, 1.0});
    CHECK(rel_close(tab(3.0), evaluate_kappa(ff, 3.0), 1e-6));
}

TEST_CASE("kappa is non-negative everywhere") {
    const FormFactor lz = Lorentzian{0.3, 2.0};
    const FormFactor tab = tabulate_lorentzian(Lorentzian{0.3, 2.0}, 1e3);
    for (double w = -999.0; w <= 999.0; w += 3.7) {
        CHECK(evaluate_kappa(lz, w) >= 0.0);
        CHECK(evaluate_kappa(tab, w) >= 0.0);
    }
}

TEST_CASE("lorentzian normalization by adaptive quadrature") {
    const FormFactor ff = Lorentzian{0.1, 1.0};
    const double I = quad::integrate_adaptive([&](double w) { return evaluate_kappa(ff, w); }, -1e4, 1e4,
                                              1e-12, 1e-18);
    CHECK(std::abs(I - 0.01) <= 1e-6);
    CHECK(rel_close(kappa_integral_quadrature(ff), 0.01, 1e-10));
}

TEST_CASE("tabulated form factor domain and validation") {
    const Tabulated t({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0});
    CHECK(t(0.5) == Approx(1.0));
    CHECK(t(1.5) == Approx(1.5));
    CHECK(t(2.0) == Approx(1.0));
    CHECK_THROWS_AS(t(2.5), Error);
    try {
        (void)t(-0.1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfDomain);
    }
    CHECK_THROWS_AS(Tabulated({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), Error);
    CHECK_THROWS_AS(Tabulated({0.0, 1.0}, {1.0, -1e-3}), Error);
    CHECK_THROWS_AS(Tabulated({0.0, 1.0}, {1.0}), Error);
    CHECK_THROWS_AS(validate(FormFactor{Lorentzian{0.1, 0.0}}), Error);
}

TEST_CASE("tabulated csv loading") {
    const auto path = std::filesystem::temp_directory_path() / "zeno_kappa_test.csv";
    {
        std::ofstream out(path);
        out << "# omega, kappa\n-1,0.5\n\n0, 1\n# mid comment\n1,0.5\n";
    }
    const auto t = load_tabulated_csv(path);
    CHECK(t.omega().size() == 3);
    CHECK(t(0.5) == Approx(0.75));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_tabulated_csv(path), Error);
}

TEST_CASE("golden rule rate") {
    CHECK(golden_rule_gamma(reference_params()) == Approx(0.002).epsilon(1e-14));
    CHECK(golden_rule_gamma(lorentzian_params(3.0, 0.0, 1.0)) == 0.0);
    CHECK(golden_rule_gamma(lorentzian_params(0.0, 0.1, 1.0)) == Approx(0.02).epsilon(1e-14));
    const auto p = reference_params();
    CHECK(golden_rule_gamma(p) == 2.0 * std::numbers::pi * evaluate_kappa(p.form_factor, p.omega_a));
}

TEST_CASE("second-order energy shift") {
    const auto p = reference_params();
    CHECK(energy_shift(p) == Approx(0.003).epsilon(1e-14));
    CHECK(rel_close(energy_shift_quadrature(p), 0.003, 1e-8));
    CHECK(energy_shift(lorentzian_params(0.0, 0.1, 1.0)) == 0.0);
    CHECK(std::abs(energy_shift_quadrature(lorentzian_params(0.0, 0.1, 1.0))) <= 1e-15);
    CHECK(energy_shift(lorentzian_params(3.0, 0.0, 1.0)) == 0.0);
}

TEST_CASE("zeno time") {
    CHECK(zeno_time(reference_params()) == Approx(10.0).epsilon(1e-14));
    CHECK(rel_close(zeno_time_quadrature(reference_params()), 10.0, 1e-8));
    CHECK(zeno_time(lorentzian_params(3.0, 0.2, 1.0)) == Approx(5.0).epsilon(1e-14));
    for (double wa : {-2.0, 0.0, 0.7, 12.0}) CHECK(zeno_time(lorentzian_params(wa, 0.1, 1.0)) == zeno_time(reference_params()));
    try {
        (void)zeno_time(lorentzian_params(3.0, 0.0, 1.0));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSystem);
    }
}

TEST_CASE("tabulated copy reproduces the closed forms") {
    const auto p = reference_params();
    const auto t = tabulated_reference();
    CHECK(rel_close(golden_rule_gamma(t), golden_rule_gamma(p), 1e-6));
    CHECK(rel_close(energy_shift(t), energy_shift(p), 1e-6));
    CHECK(rel_close(zeno_time(t), zeno_time(p), 1e-6));
}

TEST_CASE("coupling scaling") {
    const auto p = reference_params();
    for (double c : {0.5, 2.0}) {
        const auto q = lorentzian_params(3.0, 0.1 * c, 1.0);
        CHECK(rel_close(golden_rule_gamma(q), c * c * golden_rule_gamma(p), 1e-14));
        CHECK(rel_close(zeno_time(q), zeno_time(p) / c, 1e-14));
    }
}

TEST_CASE("gamma tau_Z^2 equals 2 pi kappa(omega_a) / lambda^2") {
    const auto p = reference_params();
    const double tz = zeno_time(p);
    const double lhs = golden_rule_gamma(p) * tz * tz;
    CHECK(rel_close(lhs, 2.0 * std::numbers::pi * evaluate_kappa(p.form_factor, 3.0) / 0.01, 1e-14));
    CHECK(lhs == Approx(0.2).epsilon(1e-14));
}

TEST_CASE("gauss-legendre rule") {
    const auto r = quad::gauss_legendre(7);
    double s = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
        s += r.weights[i];
        m4 += r.weights[i] * std::pow(r.nodes[i], 12);
    }
    CHECK(s == Approx(2.0).epsilon(1e-14));
    CHECK(m4 == Approx(2.0 / 13.0).epsilon(1e-13));
    CHECK(r.nodes[3] == 0.0);
    const auto one = quad::gauss_legendre(1);
    CHECK(one.nodes[0] == 0.0);
    CHECK(one.weights[0] == 2.0);
}
