#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "zeno/arrowhead.hpp"
#include "zeno/error.hpp"
#include "zeno/measurement.hpp"
#include "zeno/oracle.hpp"
#include "zeno/resolvent.hpp"

using namespace zeno;
using namespace zeno::oracle;

namespace {

const SystemParams ref = reference_params();

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

double sup_deviation(const SystemParams& p, std::size_t n_modes, double horizon) {
    const auto bath = discretize(p.form_factor, n_modes);
    const auto h = build_hamiltonian(p, HamiltonianKind::bare(), bath);
    const auto times = linspace(0.0, horizon, 2001);
    const auto amps = evolve_survival(h, times);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        worst = std::max(worst, std::abs(std::norm(amps[i]) - survival_probability(p, times[i])));
    }
    return worst;
}

} // namespace

TEST_CASE("discretized lorentzian bath") {
    const auto bath = discretize(ref.form_factor, 2000);
    CHECK(bath.n_modes() == 2000);
    CHECK(std::abs(bath.coupling_sum() - 0.01) <= 1e-6 * 0.01);
    CHECK(std::abs(bath.first_moment()) <= 1e-12);
    for (const auto& m : bath.modes()) CHECK(m.phi >= 0.0);
    const auto w = bath.frequencies();
    CHECK(std::is_sorted(w.begin(), w.end()));
    CHECK(bath.bandwidth() == doctest::Approx(1.0).epsilon(0.01));

    const auto one = discretize(ref.form_factor, 1);
    CHECK(one.modes()[0].omega == 0.0);
    try {
        (void)discretize(ref.form_factor, 0);
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("discretized tabulated bath") {
    const FormFactor tab = tabulate_lorentzian(Lorentzian{0.1, 1.0}, 1e3);
    const auto bath = discretize(tab, 4000);
    // kappa beyond |omega| = 1e3 holds 2 lambda^2 / (pi 1e3) of the weight; the
    // piecewise-linear interpolant is not resolved exactly by 8-point panels.
    CHECK(std::abs(bath.coupling_sum() - 0.01 * (1.0 - 2.0 / (3.14159265358979 * 1e3))) <= 1e-4 * 0.01);
    const auto w = bath.frequencies();
    CHECK(w.front() >= -1e3);
    CHECK(w.back() <= 1e3);
}

TEST_CASE("hamiltonian structure") {
    const auto bath = discretize(ref.form_factor, 40);
    const auto bare = build_hamiltonian(ref, HamiltonianKind::bare(), bath);
    const auto rabi = build_hamiltonian(ref, HamiltonianKind::rabi(2.5), bath);
    const auto cont = build_hamiltonian(ref, HamiltonianKind::continuous(3.0), bath);
    const auto cont0 = build_hamiltonian(ref, HamiltonianKind::continuous(0.0), bath);
    CHECK(bare.dimension() == 41);
    CHECK(rabi.dimension() == 81);
    CHECK(bare.hermitian);
    CHECK(rabi.hermitian);
    CHECK_FALSE(cont.hermitian);
    CHECK(cont0.hermitian);

    const Eigen::MatrixXcd B = bare.dense(), R = rabi.dense(), C = cont.dense();
    CHECK((B - B.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((R - R.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    Eigen::MatrixXcd expect = B;
    for (Eigen::Index k = 1; k < expect.rows(); ++k) expect(k, k) -= cplx{0.0, 1.5};
    CHECK((C - expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK((cont0.dense() - B).cwiseAbs().maxCoeff() == 0.0);
    CHECK(B(0, 0) == cplx{3.0, 0.0});
    CHECK(R(1, 41) == cplx{2.5, 0.0});
    CHECK(R(41, 41) == B(1, 1));
    CHECK_THROWS_AS(build_hamiltonian(ref, HamiltonianKind::continuous(-1.0), bath), Error);
}

TEST_CASE("arrowhead spectrum matches dense diagonalization") {
    const std::vector<double> d = {-2.0, -0.5, -0.5, 0.1, 0.1, 0.1, 0.7, 0.7000000001, 1.3, 2.0, 5.0};
    const std::vector<double> g = {0.3, 0.2, 0.1, 0.0, 0.25, 0.05, 0.4, 0.4, 0.0, 0.6, 1e-9};
    const ArrowheadSpectrum s(0.2, d, g);
    REQUIRE(s.size() == d.size() + 1);

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(12, 12);
    H(0, 0) = 0.2;
    for (std::size_t k = 0; k < d.size(); ++k) {
        H(k + 1, k + 1) = d[k];
        H(0, k + 1) = H(k + 1, 0) = g[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    std::vector<std::pair<double, double>> mine, dense;
    for (std::size_t n = 0; n < s.size(); ++n) mine.emplace_back(s.energies()[n], s.weights()[n]);
    for (Eigen::Index n = 0; n < 12; ++n) dense.emplace_back(es.eigenvalues()(n), es.eigenvectors()(0, n) * es.eigenvectors()(0, n));
    std::sort(mine.begin(), mine.end());
    double wsum = 0.0;
    for (std::size_t n = 0; n < 12; ++n) {
        CHECK(std::abs(mine[n].first - dense[n].first) <= 1e-13);
        wsum += mine[n].second;
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-14);
    // Degenerate eigenvalues make per-vector weights basis dependent; compare
    // the weight sum per distinct eigenvalue instead.
    for (std::size_t n = 0; n < 12;) {
        std::size_t m = n;
        double a = 0.0, b = 0.0;
        while (m < 12 && std::abs(mine[m].first - mine[n].first) <= 1e-9) {
            a += mine[m].second;
            b += dense[m].second;
            ++m;
        }
        CHECK(std::abs(a - b) <= 1e-12);
        n = m;
    }
}

TEST_CASE("structured propagator matches dense evolution") {
    const auto bath = discretize(ref.form_factor, 150);
    const auto times = linspace(0.0, 20.0, 41);
    for (auto kind : {HamiltonianKind::bare(), HamiltonianKind::rabi(1.5), HamiltonianKind::continuous(0.8),
                      HamiltonianKind::continuous(6.0)}) {
        const auto h = build_hamiltonian(ref, kind, bath);
        const auto fast = evolve_survival(h, times);
        const auto dense = evolve_survival_dense(h, times);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, std::abs(fast[i] - dense[i]));
        const double tol = kind.type == HamiltonianKind::Type::Continuous ? 1e-9 : 1e-11;
        CHECK(worst <= tol);
        CHECK(std::abs(fast[0] - 1.0) <= 1e-14);
    }
}

TEST_CASE("off-grid times agree with the uniform march") {
    const auto bath = discretize(ref.form_factor, 400);
    const auto h = build_hamiltonian(ref, HamiltonianKind::continuous(2.0), bath);
    const SurvivalPropagator prop(h);
    const std::vector<double> odd = {0.0, 0.013, 1.7777, 9.25, 31.4159};
    const auto a = prop.amplitudes(odd);
    const auto d = evolve_survival_dense(h, odd);
    for (std::size_t i = 0; i < odd.size(); ++i) CHECK(std::abs(a[i] - d[i]) <= 1e-8);
}

TEST_CASE("decoupled and zero-control limits") {
    const auto free = lorentzian_params(3.0, 0.0, 1.0);
    const auto bath = discretize(free.form_factor, 200);
    const auto h = build_hamiltonian(free, HamiltonianKind::bare(), bath);
    const auto times = linspace(0.0, 50.0, 11);
    for (const auto& a : evolve_survival(h, times)) CHECK(std::abs(std::norm(a) - 1.0) <= 1e-14);

    const auto rb = discretize(ref.form_factor, 200);
    const SurvivalPropagator bare(build_hamiltonian(ref, HamiltonianKind::bare(), rb));
    const SurvivalPropagator rabi0(build_hamiltonian(ref, HamiltonianKind::rabi(0.0), rb));
    std::vector<double> eb(bare.spectrum().energies().begin(), bare.spectrum().energies().end());
    std::vector<double> er(rabi0.spectrum().energies().begin(), rabi0.spectrum().energies().end());
    CHECK(er.size() == eb.size() + 200);
    // Coupled part identical; the extra levels carry no weight on |a>.
    std::vector<double> er_coupled;
    for (std::size_t n = 0; n < er.size(); ++n) {
        if (rabi0.spectrum().weights()[n] > 0.0) er_coupled.push_back(er[n]);
    }
    std::vector<double> eb_coupled;
    for (std::size_t n = 0; n < eb.size(); ++n) {
        if (bare.spectrum().weights()[n] > 0.0) eb_coupled.push_back(eb[n]);
    }
    std::sort(er_coupled.begin(), er_coupled.end());
    std::sort(eb_coupled.begin(), eb_coupled.end());
    REQUIRE(er_coupled.size() == eb_coupled.size());
    for (std::size_t n = 0; n < er_coupled.size(); ++n) CHECK(std::abs(er_coupled[n] - eb_coupled[n]) <= 1e-13);
}

TEST_CASE("unitarity of hermitian kinds") {
    const auto bath = discretize(ref.form_factor, 300);
    for (auto kind : {HamiltonianKind::bare(), HamiltonianKind::rabi(3.0)}) {
        const SurvivalPropagator prop(build_hamiltonian(ref, kind, bath));
        for (double t : {0.0, 1.0, 37.0, 150.0}) CHECK(std::abs(prop.total_population(t) - 1.0) <= 1e-10);
    }
}

TEST_CASE("reference bare survival against the closed form") {
    CHECK(sup_deviation(ref, kDefaultModes, kDefaultHorizon) <= 1e-3);
}

TEST_CASE("convergence in the number of modes") {
    // Common trusted horizon: the 500-mode bath's guard sits near t = 318.
    const double horizon = discretize(ref.form_factor, 500).recurrence_guard();
    CHECK(horizon < 500.0);
    double previous = 1.0e300;
    for (std::size_t n : {500, 1000, 2000, 4000}) {
        const double dev = sup_deviation(ref, n, horizon);
        CHECK(dev <= 1.1 * previous);
        CHECK(dev < previous);
        previous = dev;
    }
}

TEST_CASE("recurrence guard") {
    for (std::size_t n : {500, 1000, 2000, 4000}) {
        const auto bath = discretize(ref.form_factor, n);
        const auto h = build_hamiltonian(ref, HamiltonianKind::bare(), bath);
        const std::vector<double> beyond = {0.0, 1.01 * bath.recurrence_guard()};
        try {
            (void)evolve_survival(h, beyond);
            FAIL("expected a recurrence-guard error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::RecurrenceGuard);
        }
        const std::vector<double> inside = {0.0, 0.99 * bath.recurrence_guard()};
        CHECK_NOTHROW((void)evolve_survival(h, inside));
    }
    const auto h = build_hamiltonian(ref, HamiltonianKind::bare(), discretize(ref.form_factor, 10));
    const std::vector<double> unordered = {1.0, 0.5};
    CHECK_THROWS_AS(evolve_survival(h, unordered), Error);
    const std::vector<double> negative = {-1.0};
    CHECK_THROWS_AS(evolve_survival(h, negative), Error);
}

TEST_CASE("pulsed projection loop") {
    const auto bath = discretize(ref.form_factor, kDefaultModes);
    const auto h = build_hamiltonian(ref, HamiltonianKind::bare(), bath);
    const std::vector<double> taus = {0.05, 1.0};
    const auto amps = evolve_survival(h, taus);
    CHECK(pulsed_run(ref, bath, 0.05, 1) == doctest::Approx(std::norm(amps[0])).epsilon(1e-12));
    const double hinder = pulsed_run(ref, bath, 0.05, 100);
    CHECK(std::abs(hinder - std::pow(std::norm(amps[0]), 100)) <= 1e-10);
    CHECK(hinder > survival_probability(ref, 5.0));
    const double accel = pulsed_run(ref, bath, 1.0, 5);
    CHECK(std::abs(accel - std::pow(std::norm(amps[1]), 5)) <= 1e-10);
    CHECK(accel < survival_probability(ref, 5.0));
    CHECK_THROWS_AS(pulsed_run(ref, bath, 0.0, 3), Error);
    CHECK_THROWS_AS(pulsed_run(ref, bath, 0.1, 0), Error);
}

TEST_CASE("empirical effective rates") {
    const auto bath = discretize(ref.form_factor, kDefaultModes);
    const double pulsed = empirical_gamma_eff(ref, bath, Pulsed{0.01});
    CHECK(std::abs(pulsed - 1e-4) <= 0.02 * 1e-4);
    CHECK(std::abs(pulsed - effective_rate_pulsed(ref, 0.01)) <= 0.02 * effective_rate_pulsed(ref, 0.01));

    const auto cont = fit_gamma_eff(ref, bath, Continuous{2.0});
    CHECK(std::abs(cont.gamma_eff - 3.0769e-3) <= 0.02 * 3.0769e-3);
    CHECK(cont.t_start < cont.t_end);
    CHECK(cont.samples > 100);

    const double rabi = empirical_gamma_eff(ref, bath, Rabi{3.0});
    CHECK(std::abs(rabi - 1.027e-2) <= 0.03 * 1.027e-2);
}
