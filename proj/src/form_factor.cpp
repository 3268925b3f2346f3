#include "zeno/form_factor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "zeno/error.hpp"

namespace zeno {

Tabulated::Tabulated(std::vector<double> omega, std::vector<double> kappa)
    : omega_(std::move(omega)), kappa_(std::move(kappa)) {
    if (omega_.size() != kappa_.size()) {
        throw Error(ErrorKind::Config, "tabulated form factor: omega/kappa size mismatch");
    }
    if (omega_.size() < 2) {
        throw Error(ErrorKind::Config, "tabulated form factor needs at least two samples");
    }
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        if (!std::isfinite(omega_[i]) || !std::isfinite(kappa_[i])) {
            throw Error(ErrorKind::Config, "tabulated form factor: non-finite sample");
        }
        if (kappa_[i] < 0.0) {
            throw Error(ErrorKind::Config, "tabulated form factor: negative kappa at omega=" +
                                               std::to_string(omega_[i]));
        }
        if (i > 0 && !(omega_[i] > omega_[i - 1])) {
            throw Error(ErrorKind::Config,
                        "tabulated form factor: omega samples must be strictly increasing");
        }
    }
}

double Tabulated::operator()(double omega) const {
    if (!(omega >= omega_.front() && omega <= omega_.back())) {
        throw Error(ErrorKind::OutOfDomain, "omega=" + std::to_string(omega) +
                                                " outside tabulated range [" +
                                                std::to_string(omega_.front()) + ", " +
                                                std::to_string(omega_.back()) + "]");
    }
    auto it = std::upper_bound(omega_.begin(), omega_.end(), omega);
    if (it == omega_.end()) return kappa_.back();
    const std::size_t hi = static_cast<std::size_t>(it - omega_.begin());
    const std::size_t lo = hi - 1;
    const double t = (omega - omega_[lo]) / (omega_[hi] - omega_[lo]);
    return kappa_[lo] + t * (kappa_[hi] - kappa_[lo]);
}

SystemParams reference_params() { return lorentzian_params(3.0, 0.1, 1.0); }

SystemParams lorentzian_params(double omega_a, double lambda, double big_lambda) {
    SystemParams p{omega_a, Lorentzian{lambda, big_lambda}};
    validate(p);
    return p;
}

void validate(const FormFactor& ff) {
    if (const auto* lz = std::get_if<Lorentzian>(&ff)) {
        // lambda = 0 is admitted as the decoupled limit.
        if (!(lz->lambda >= 0.0) || !std::isfinite(lz->lambda)) {
            throw Error(ErrorKind::Config, "lambda must be finite and non-negative");
        }
        if (!(lz->big_lambda > 0.0) || !std::isfinite(lz->big_lambda)) {
            throw Error(ErrorKind::Config, "big_lambda must be finite and positive");
        }
    }
}

void validate(const SystemParams& params) {
    if (!std::isfinite(params.omega_a)) {
        throw Error(ErrorKind::Config, "omega_a must be finite");
    }
    validate(params.form_factor);
}

double evaluate_kappa(const FormFactor& ff, double omega) {
    if (const auto* lz = std::get_if<Lorentzian>(&ff)) {
        const double l2 = lz->big_lambda * lz->big_lambda;
        return lz->lambda * lz->lambda * lz->big_lambda /
               (std::numbers::pi * (omega * omega + l2));
    }
    return std::get<Tabulated>(ff)(omega);
}

Tabulated tabulate_lorentzian(const Lorentzian& lz, double omega_max, double core_step,
                              double tail_ratio) {
    const double core = 10.0 * lz.big_lambda;
    std::vector<double> positive;
    const auto steps = static_cast<long>(std::ceil(core / core_step));
    for (long i = 1; i <= steps; ++i) positive.push_back(core * static_cast<double>(i) / static_cast<double>(steps));
    for (double w = core * tail_ratio; w < omega_max; w *= tail_ratio) positive.push_back(w);
    positive.push_back(omega_max);

    std::vector<double> omega;
    omega.reserve(2 * positive.size() + 1);
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) omega.push_back(-*it);
    omega.push_back(0.0);
    omega.insert(omega.end(), positive.begin(), positive.end());

    std::vector<double> kappa;
    kappa.reserve(omega.size());
    const FormFactor ff = lz;
    for (double w : omega) kappa.push_back(evaluate_kappa(ff, w));
    return Tabulated(std::move(omega), std::move(kappa));
}

Tabulated load_tabulated_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open form-factor CSV " + path.string());
    std::vector<double> omega, kappa;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorKind::Config, path.string() + ":" + std::to_string(lineno) +
                                               ": expected two comma-separated columns");
        }
        try {
            std::size_t used = 0;
            const std::string a = line.substr(0, comma);
            const std::string b = line.substr(comma + 1);
            omega.push_back(std::stod(a, &used));
            kappa.push_back(std::stod(b, &used));
            if (b.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorKind::Config,
                        path.string() + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    return Tabulated(std::move(omega), std::move(kappa));
}

} // namespace zeno
