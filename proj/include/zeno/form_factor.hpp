// form_factor.hpp: unstable-system parameters and the spectral density kappa_a(omega)
//
// All quantities are dimensionless, measured in units of the Lorentzian
// bandwidth (Lambda = 1 in the reference configuration).

#pragma once

#include <filesystem>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace zeno {

/// kappa(omega) = lambda^2 Lambda / [pi (omega^2 + Lambda^2)] on the whole real line.
struct Lorentzian {
    double lambda = 0.1;     // coupling strength
    double big_lambda = 1.0; // bandwidth
};

/// Piecewise-linear spectral density through (omega, kappa) samples.
/// Samples must be strictly increasing in omega with kappa >= 0.
class Tabulated {
public:
    Tabulated(std::vector<double> omega, std::vector<double> kappa);

    std::span<const double> omega() const noexcept { return omega_; }
    std::span<const double> kappa() const noexcept { return kappa_; }
    double lower() const noexcept { return omega_.front(); }
    double upper() const noexcept { return omega_.back(); }

    // Throws ErrorKind::OutOfDomain outside [lower, upper].
    double operator()(double omega) const;

private:
    std::vector<double> omega_;
    std::vector<double> kappa_;
};

using FormFactor = std::variant<Lorentzian, Tabulated>;

struct SystemParams {
    double omega_a = 3.0;
    FormFactor form_factor = Lorentzian{};
};

/// lambda = 0.1, Lambda = 1, omega_a = 3.
SystemParams reference_params();

SystemParams lorentzian_params(double omega_a, double lambda, double big_lambda);

/// Throws ErrorKind::Config / Domain when the form factor violates its invariants.
void validate(const FormFactor& ff);
void validate(const SystemParams& params);

double evaluate_kappa(const FormFactor& ff, double omega);

inline const Lorentzian* as_lorentzian(const SystemParams& p) noexcept {
    return std::get_if<Lorentzian>(&p.form_factor);
}

/// Tabulated copy of a Lorentzian on a grid that is dense near the origin and
/// geometric in the tails, covering [-omega_max, omega_max].
Tabulated tabulate_lorentzian(const Lorentzian& lz, double omega_max = 1e6,
                              double core_step = 1e-3, double tail_ratio = 1.001);

/// Two-column CSV (omega, kappa); '#' lines and blank lines are skipped.
Tabulated load_tabulated_csv(const std::filesystem::path& path);

} // namespace zeno
