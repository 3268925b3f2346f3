// oracle.hpp: brute-force discretized-bath validator
//
// The continuum is replaced by finitely many modes; the single-excitation
// Hamiltonian (plus detector couplings) is built as an explicit matrix and
// evolved exactly. Nothing here uses the closed forms of the resolvent or
// measurement modules.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "zeno/arrowhead.hpp"
#include "zeno/form_factor.hpp"
#include "zeno/measurement.hpp"

namespace zeno::oracle {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultModes = 4000;
inline constexpr double kDefaultHorizon = 500.0;

struct BathMode {
    double omega;
    double phi;    // sqrt(kappa(omega) * weight)
    double weight; // quadrature weight in omega
};

class DiscretizedBath {
public:
    explicit DiscretizedBath(std::vector<BathMode> modes);

    std::size_t n_modes() const noexcept { return modes_.size(); }
    std::span<const BathMode> modes() const noexcept { return modes_; }
    std::vector<double> frequencies() const;
    std::vector<double> couplings() const;

    /// sum phi_k^2 (-> int kappa as n_modes grows).
    double coupling_sum() const;
    /// sum phi_k^2 omega_k.
    double first_moment() const;

    /// Half the recurrence time 2 pi / min_k (omega_{k+1} - omega_k).
    double recurrence_guard() const;
    /// Spacing of the modes bracketing omega (inf outside the bath).
    double local_spacing(double omega) const;
    /// Half-width of the band holding the central half of sum phi_k^2.
    double bandwidth() const;

private:
    std::vector<BathMode> modes_; // ascending omega
};

/// Lorentzian: omega = Lambda tan(theta) with Gauss-Legendre nodes in theta.
/// Tabulated: composite Gauss-Legendre over the tabulated support.
DiscretizedBath discretize(const FormFactor& ff, std::size_t n_modes);

struct HamiltonianKind {
    enum class Type { Bare, Rabi, Continuous };
    Type type = Type::Bare;
    double control = 0.0; // K for Rabi, Gamma for Continuous

    static HamiltonianKind bare() { return {Type::Bare, 0.0}; }
    static HamiltonianKind rabi(double k) { return {Type::Rabi, k}; }
    static HamiltonianKind continuous(double big_gamma) { return {Type::Continuous, big_gamma}; }
};

/// Basis order: |a>, |b,1_k> (k = 0..N-1), then |M,1_k> for the Rabi kind.
struct OracleHamiltonian {
    HamiltonianKind kind;
    double omega_a = 0.0;
    DiscretizedBath bath;
    Eigen::SparseMatrix<cplx> matrix;
    bool hermitian = true;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

OracleHamiltonian build_hamiltonian(const SystemParams& params, HamiltonianKind kind,
                                    const DiscretizedBath& bath);

/// Exact propagator for <a| exp(-iHt) |a>.
///
/// Bare and Rabi kinds are Hermitian arrowhead matrices once each (b_k, M_k)
/// pair is rotated onto its Rabi-split eigenstates at omega_k +/- K; they are
/// diagonalized exactly. The Continuous kind equals (H_bare - i Gamma/2) +
/// (i Gamma/2)|a><a|, so its amplitude obeys the renewal equation
///     A(t) = e^{-Gamma t/2} A0(t) + (Gamma/2) int_0^t e^{-Gamma (t-s)/2} A0(t-s) A(s) ds
/// with A0 the bare amplitude. The kernel is a sum of damped exponentials over
/// the bare eigenstates, whose history integrals are advanced exactly on a
/// uniform grid (piecewise-linear A, then one Richardson step).
class SurvivalPropagator {
public:
    explicit SurvivalPropagator(const OracleHamiltonian& h);

    const ArrowheadSpectrum& spectrum() const noexcept { return spectrum_; }
    double recurrence_guard() const noexcept { return guard_; }

    /// Amplitudes at the requested (non-negative, non-decreasing) times.
    std::vector<cplx> amplitudes(std::span<const double> times) const;

    /// Amplitudes on t_j = j * step, j = 0..count-1.
    std::vector<cplx> amplitudes_uniform(double step, std::size_t count) const;

    /// |A(t)|^2 + sum over all other basis states of their population (Hermitian kinds).
    double total_population(double t) const;

    /// Internal step of the renewal-equation march (Continuous kind).
    static constexpr double kRenewalStep = 0.01;

private:
    std::vector<cplx> bare_uniform(double step, std::size_t count) const;
    std::vector<cplx> continuous_uniform(double step, std::size_t count) const;
    std::vector<cplx> renewal_march(double step, std::size_t count) const;

    HamiltonianKind kind_;
    double omega_a_;
    double guard_;
    ArrowheadSpectrum spectrum_;
};

/// Evolves |a> and returns <a|psi(t)> at each requested time. RecurrenceGuard
/// when a time exceeds the bath's trusted horizon.
std::vector<cplx> evolve_survival(const OracleHamiltonian& h, std::span<const double> times);

/// Same quantity through a dense Eigen eigendecomposition of h.matrix
/// (small systems only; used to cross-check the structured path).
std::vector<cplx> evolve_survival_dense(const OracleHamiltonian& h, std::span<const double> times);

/// n cycles of (evolve by tau, project onto |a>) on an explicit state vector.
double pulsed_run(const SystemParams& params, const DiscretizedBath& bath, double tau, long n);

struct FitReport {
    double gamma_eff = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t samples = 0;
};

/// Pulsed: -log|A(tau)|^2 / tau. Continuous / Rabi: least-squares slope of
/// -log P(t) over the pole-dominated window.
FitReport fit_gamma_eff(const SystemParams& params, const DiscretizedBath& bath,
                        const MeasurementScheme& scheme);
double empirical_gamma_eff(const SystemParams& params, const DiscretizedBath& bath,
                           const MeasurementScheme& scheme);

} // namespace zeno::oracle
