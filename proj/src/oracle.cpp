#include "zeno/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "zeno/error.hpp"
#include "zeno/kernels.hpp"
#include "zeno/quadrature.hpp"

namespace zeno::oracle {

namespace {

constexpr cplx I{0.0, 1.0};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

// ---------------------------------------------------------------- bath ----

DiscretizedBath::DiscretizedBath(std::vector<BathMode> modes) : modes_(std::move(modes)) {
    std::stable_sort(modes_.begin(), modes_.end(),
                     [](const BathMode& a, const BathMode& b) { return a.omega < b.omega; });
    for (const auto& m : modes_) {
        if (!std::isfinite(m.omega) || !(m.phi >= 0.0) || !std::isfinite(m.phi)) {
            throw Error(ErrorKind::NumericalFailure, "bath mode with non-finite or negative coupling");
        }
    }
}

std::vector<double> DiscretizedBath::frequencies() const {
    std::vector<double> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(m.omega);
    return out;
}

std::vector<double> DiscretizedBath::couplings() const {
    std::vector<double> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(m.phi);
    return out;
}

double DiscretizedBath::coupling_sum() const {
    double s = 0.0;
    for (const auto& m : modes_) s += m.phi * m.phi;
    return s;
}

double DiscretizedBath::first_moment() const {
    double s = 0.0;
    for (const auto& m : modes_) s += m.phi * m.phi * m.omega;
    return s;
}

double DiscretizedBath::recurrence_guard() const {
    if (modes_.size() < 2) return std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < modes_.size(); ++k) {
        min_gap = std::min(min_gap, modes_[k].omega - modes_[k - 1].omega);
    }
    return 0.5 * 2.0 * std::numbers::pi / min_gap;
}

double DiscretizedBath::local_spacing(double omega) const {
    if (modes_.size() < 2 || omega < modes_.front().omega || omega > modes_.back().omega) {
        return std::numeric_limits<double>::infinity();
    }
    auto it = std::upper_bound(modes_.begin(), modes_.end(), omega,
                               [](double w, const BathMode& m) { return w < m.omega; });
    std::size_t hi = static_cast<std::size_t>(it - modes_.begin());
    hi = std::clamp<std::size_t>(hi, 1, modes_.size() - 1);
    return modes_[hi].omega - modes_[hi - 1].omega;
}

double DiscretizedBath::bandwidth() const {
    const double total = coupling_sum();
    if (!(total > 0.0)) return 1.0;
    double acc = 0.0;
    double q25 = modes_.front().omega;
    double q75 = modes_.back().omega;
    bool have25 = false;
    for (const auto& m : modes_) {
        acc += m.phi * m.phi;
        if (!have25 && acc >= 0.25 * total) {
            q25 = m.omega;
            have25 = true;
        }
        if (acc >= 0.75 * total) {
            q75 = m.omega;
            break;
        }
    }
    return std::max(0.5 * (q75 - q25), std::numeric_limits<double>::min());
}

DiscretizedBath discretize(const FormFactor& ff, std::size_t n_modes) {
    if (n_modes == 0) throw Error(ErrorKind::Domain, "discretize: n_modes must be >= 1");
    std::vector<BathMode> modes;
    modes.reserve(n_modes);
    if (const auto* lz = std::get_if<Lorentzian>(&ff)) {
        const auto rule = quad::gauss_legendre(n_modes);
        const double L = lz->big_lambda;
        const double half_pi = 0.5 * std::numbers::pi;
        for (std::size_t j = 0; j < n_modes; ++j) {
            const double theta = half_pi * rule.nodes[j];
            const double c = std::cos(theta);
            const double omega = L * std::tan(theta);
            const double w = L / (c * c) * half_pi * rule.weights[j];
            modes.push_back({omega, std::sqrt(evaluate_kappa(ff, omega) * w), w});
        }
        return DiscretizedBath(std::move(modes));
    }
    const auto& tab = std::get<Tabulated>(ff);
    const std::size_t order = 8;
    const std::size_t panels = std::max<std::size_t>(1, n_modes / order);
    const std::size_t base = n_modes / panels;
    const std::size_t extra = n_modes % panels;
    const double a = tab.lower();
    const double width = (tab.upper() - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const std::size_t q = base + (p < extra ? 1 : 0);
        const auto rule = quad::gauss_legendre(q);
        const double lo = a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width;
        for (std::size_t j = 0; j < q; ++j) {
            const double omega = mid + 0.5 * width * rule.nodes[j];
            const double w = 0.5 * width * rule.weights[j];
            modes.push_back({omega, std::sqrt(tab(omega) * w), w});
        }
    }
    return DiscretizedBath(std::move(modes));
}

// ---------------------------------------------------------- hamiltonian ----

OracleHamiltonian build_hamiltonian(const SystemParams& params, HamiltonianKind kind,
                                    const DiscretizedBath& bath) {
    if (!(kind.control >= 0.0) || !std::isfinite(kind.control)) {
        throw Error(ErrorKind::Domain, "detector coupling must be finite and >= 0");
    }
    const std::size_t n = bath.n_modes();
    const bool rabi = kind.type == HamiltonianKind::Type::Rabi;
    const std::size_t dim = 1 + n * (rabi ? 2 : 1);

    std::vector<Eigen::Triplet<cplx>> entries;
    entries.reserve(1 + 3 * n + (rabi ? 3 * n : 0));
    entries.emplace_back(0, 0, cplx{params.omega_a, 0.0});
    const double shift = kind.type == HamiltonianKind::Type::Continuous ? -0.5 * kind.control : 0.0;
    const auto modes = bath.modes();
    for (std::size_t k = 0; k < n; ++k) {
        const auto b = static_cast<int>(1 + k);
        entries.emplace_back(b, b, cplx{modes[k].omega, shift});
        if (modes[k].phi != 0.0) {
            entries.emplace_back(0, b, cplx{modes[k].phi, 0.0});
            entries.emplace_back(b, 0, cplx{modes[k].phi, 0.0});
        }
        if (rabi) {
            const auto m = static_cast<int>(1 + n + k);
            entries.emplace_back(m, m, cplx{modes[k].omega, 0.0});
            if (kind.control != 0.0) {
                entries.emplace_back(b, m, cplx{kind.control, 0.0});
                entries.emplace_back(m, b, cplx{kind.control, 0.0});
            }
        }
    }
    OracleHamiltonian h{kind, params.omega_a, bath, Eigen::SparseMatrix<cplx>(), true};
    h.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    h.matrix.setFromTriplets(entries.begin(), entries.end());
    h.matrix.makeCompressed();
    h.hermitian = !(kind.type == HamiltonianKind::Type::Continuous && kind.control != 0.0);
    return h;
}

// ----------------------------------------------------------- propagator ----

namespace {

ArrowheadSpectrum spectrum_for(const OracleHamiltonian& h) {
    const auto w = h.bath.frequencies();
    const auto g = h.bath.couplings();
    if (h.kind.type != HamiltonianKind::Type::Rabi) {
        return ArrowheadSpectrum(h.omega_a, w, g);
    }
    // (b_k, M_k) with equal energies and coupling K rotate onto omega_k -/+ K,
    // each carrying phi_k / sqrt(2).
    const double K = h.kind.control;
    std::vector<double> poles;
    std::vector<double> couplings;
    poles.reserve(2 * w.size());
    couplings.reserve(2 * w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        poles.push_back(w[k] - K);
        couplings.push_back(g[k] * std::numbers::sqrt2 * 0.5);
        poles.push_back(w[k] + K);
        couplings.push_back(g[k] * std::numbers::sqrt2 * 0.5);
    }
    return ArrowheadSpectrum(h.omega_a, poles, couplings);
}

void check_times(std::span<const double> times, double guard) {
    if (times.empty()) throw Error(ErrorKind::Domain, "evolve: empty time list");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
            throw Error(ErrorKind::Domain, "evolve: times must be finite and >= 0");
        }
        if (i > 0 && times[i] < times[i - 1]) {
            throw Error(ErrorKind::Domain, "evolve: times must be non-decreasing");
        }
    }
    if (times.back() > guard) {
        throw Error(ErrorKind::RecurrenceGuard,
                    "t=" + fmt(times.back()) + " exceeds the trusted horizon " + fmt(guard) +
                        " of this bath (half the recurrence time 2 pi / min spacing)");
    }
}

// Uniform grid starting at zero? Returns the step (0 if not uniform).
double uniform_step(std::span<const double> times) {
    if (times.size() < 2 || times[0] != 0.0) return 0.0;
    const double step = times[1] - times[0];
    if (!(step > 0.0)) return 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expect = step * static_cast<double>(i);
        if (std::abs(times[i] - expect) > 1e-12 * std::max(1.0, expect)) return 0.0;
    }
    return step;
}

} // namespace

SurvivalPropagator::SurvivalPropagator(const OracleHamiltonian& h)
    : kind_(h.kind), omega_a_(h.omega_a), guard_(h.bath.recurrence_guard()),
      spectrum_(spectrum_for(h)) {}

std::vector<cplx> SurvivalPropagator::bare_uniform(double step, std::size_t count) const {
    const auto E = spectrum_.energies();
    const auto w = spectrum_.weights();
    const std::size_t n = E.size();
    std::vector<double> zr(n), zi(n), rr(n), ri(n);
    for (std::size_t k = 0; k < n; ++k) {
        rr[k] = std::cos(E[k] * step);
        ri[k] = -std::sin(E[k] * step);
    }
    std::vector<cplx> out(count);
    constexpr std::size_t kReseed = 256;
    for (std::size_t j = 0; j < count; ++j) {
        if (j % kReseed == 0) {
            const double t = step * static_cast<double>(j);
            for (std::size_t k = 0; k < n; ++k) {
                zr[k] = std::cos(E[k] * t);
                zi[k] = -std::sin(E[k] * t);
            }
        }
        out[j] = kernels::phasor_step(zr, zi, rr, ri, w);
    }
    return out;
}

std::vector<cplx> SurvivalPropagator::continuous_uniform(double step, std::size_t count) const {
    // The only error left is the linear interpolation of A between grid points,
    // a smooth series in h^2, so one Richardson step lifts the march to O(h^4).
    const auto coarse = renewal_march(step, count);
    if (kind_.control == 0.0 || count < 2) return coarse;
    const auto fine = renewal_march(0.5 * step, 2 * count - 1);
    std::vector<cplx> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = (4.0 * fine[2 * j] - coarse[j]) / 3.0;
    return out;
}

namespace {

// phi1(x) = (1 - e^-x) / x and phi2(x) = (1 - e^-x (1 + x)) / x^2.
std::pair<cplx, cplx> exp_moments(cplx x) {
    if (std::abs(x) < 0.5) {
        cplx p1{}, p2{}, term{1.0, 0.0}; // term = (-x)^k / (k+1)!
        for (int k = 0; k < 24; ++k) {
            p1 += term;
            p2 += term * (static_cast<double>(k + 1) / static_cast<double>(k + 2));
            term *= -x / static_cast<double>(k + 2);
        }
        return {p1, p2};
    }
    const cplx e = std::exp(-x);
    return {(1.0 - e) / x, (1.0 - e * (1.0 + x)) / (x * x)};
}

} // namespace

std::vector<cplx> SurvivalPropagator::renewal_march(double step, std::size_t count) const {
    // Rotating frame: S(t) = e^{i omega_a t} e^{-Gamma t/2} A0(t) = sum_n w_n e^{-mu_n t},
    // mu_n = Gamma/2 + i (E_n - omega_a). With A piecewise linear between grid
    // points, the history integral of each exponential is advanced exactly, so
    // the fast bath modes are integrated without aliasing.
    const double half = 0.5 * kind_.control;
    const auto E = spectrum_.energies();
    const auto wts = spectrum_.weights();
    std::vector<double> w, gr, gi, er, ei, dr, di;
    cplx beta_sum{};
    for (std::size_t n = 0; n < E.size(); ++n) {
        if (wts[n] == 0.0) continue;
        const cplx mu{half, E[n] - omega_a_};
        const cplx e = std::exp(-mu * step);
        const auto [p1, p2] = exp_moments(mu * step);
        const cplx beta = step * (p1 - p2);
        const cplx gamma = step * p2;
        const cplx g0 = 1.0 - half * beta;
        const cplx d = half * (e * beta + gamma);
        w.push_back(wts[n]);
        gr.push_back(g0.real());
        gi.push_back(g0.imag());
        er.push_back(e.real());
        ei.push_back(e.imag());
        dr.push_back(d.real());
        di.push_back(d.imag());
        beta_sum += wts[n] * beta;
    }
    const cplx denom = 1.0 - half * beta_sum;
    std::vector<cplx> out(count);
    cplx a{1.0, 0.0};
    for (std::size_t j = 0; j < count; ++j) {
        const double t = step * static_cast<double>(j);
        out[j] = std::polar(1.0, -omega_a_ * t) * a;
        if (j + 1 < count) a = kernels::relax_step(gr, gi, er, ei, dr, di, w, a) / denom;
    }
    return out;
}

std::vector<cplx> SurvivalPropagator::amplitudes_uniform(double step, std::size_t count) const {
    if (!(step > 0.0)) throw Error(ErrorKind::Domain, "uniform grid step must be positive");
    if (count == 0) return {};
    const double last = step * static_cast<double>(count - 1);
    if (last > guard_) {
        throw Error(ErrorKind::RecurrenceGuard, "t=" + fmt(last) + " exceeds the trusted horizon " +
                                                    fmt(guard_));
    }
    if (kind_.type != HamiltonianKind::Type::Continuous) return bare_uniform(step, count);
    const double h = kRenewalStep;
    if (step <= h * (1.0 + 1e-12)) return continuous_uniform(step, count);
    const auto sub = static_cast<std::size_t>(std::ceil(step / h));
    const auto fine = continuous_uniform(step / static_cast<double>(sub), (count - 1) * sub + 1);
    std::vector<cplx> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = fine[j * sub];
    return out;
}

std::vector<cplx> SurvivalPropagator::amplitudes(std::span<const double> times) const {
    check_times(times, guard_);
    if (const double step = uniform_step(times); step > 0.0) {
        return amplitudes_uniform(step, times.size());
    }
    std::vector<cplx> out;
    out.reserve(times.size());
    if (kind_.type != HamiltonianKind::Type::Continuous) {
        const auto E = spectrum_.energies();
        const auto w = spectrum_.weights();
        for (double t : times) {
            cplx acc{};
            for (std::size_t k = 0; k < E.size(); ++k) acc += w[k] * std::polar(1.0, -E[k] * t);
            out.push_back(acc);
        }
        return out;
    }
    // Renewal march on a fine grid, then 4-point Lagrange interpolation of the
    // carrier-free amplitude.
    const double h = kRenewalStep;
    const auto count = static_cast<std::size_t>(std::ceil(times.back() / h)) + 3;
    const auto grid = continuous_uniform(h, count);
    std::vector<cplx> smooth(count);
    for (std::size_t j = 0; j < count; ++j) {
        smooth[j] = std::polar(1.0, omega_a_ * h * static_cast<double>(j)) * grid[j];
    }
    for (double t : times) {
        const double x = t / h;
        auto j = static_cast<std::size_t>(std::floor(x));
        j = std::clamp<std::size_t>(j, 1, count - 3);
        const double u = x - static_cast<double>(j);
        const double l0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
        const double l1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
        const double l2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
        const double l3 = (u + 1.0) * u * (u - 1.0) / 6.0;
        const cplx v = l0 * smooth[j - 1] + l1 * smooth[j] + l2 * smooth[j + 1] + l3 * smooth[j + 2];
        out.push_back(t == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -omega_a_ * t) * v);
    }
    return out;
}

double SurvivalPropagator::total_population(double t) const {
    if (kind_.type == HamiltonianKind::Type::Continuous && kind_.control != 0.0) {
        throw Error(ErrorKind::Domain, "population sum is not conserved for the continuous kind");
    }
    const auto E = spectrum_.energies();
    const auto w = spectrum_.weights();
    std::vector<cplx> phase(E.size());
    cplx amp{};
    for (std::size_t n = 0; n < E.size(); ++n) {
        phase[n] = std::polar(1.0, -E[n] * t);
        amp += w[n] * phase[n];
    }
    double total = std::norm(amp);
    const std::size_t m = spectrum_.coupled_poles().size();
    for (std::size_t j = 0; j < m; ++j) {
        cplx c{};
        for (std::size_t n = 0; n < E.size(); ++n) {
            if (w[n] == 0.0) continue;
            c += std::sqrt(w[n]) * spectrum_.mode_component(j, n) * phase[n];
        }
        total += std::norm(c);
    }
    return total;
}

std::vector<cplx> evolve_survival(const OracleHamiltonian& h, std::span<const double> times) {
    check_times(times, h.bath.recurrence_guard());
    return SurvivalPropagator(h).amplitudes(times);
}

std::vector<cplx> evolve_survival_dense(const OracleHamiltonian& h, std::span<const double> times) {
    if (h.dimension() > 2500) {
        throw Error(ErrorKind::Domain, "dense evolution is limited to dimension 2500");
    }
    check_times(times, h.bath.recurrence_guard());
    const Eigen::MatrixXcd H = h.dense();
    std::vector<cplx> out;
    out.reserve(times.size());
    if (h.hermitian) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        if (es.info() != Eigen::Success) {
            throw Error(ErrorKind::NumericalFailure, "dense Hermitian eigensolver failed");
        }
        const Eigen::VectorXd w = es.eigenvectors().row(0).cwiseAbs2().transpose();
        for (double t : times) {
            cplx acc{};
            for (Eigen::Index n = 0; n < w.size(); ++n) acc += w(n) * std::polar(1.0, -es.eigenvalues()(n) * t);
            out.push_back(acc);
        }
        return out;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "dense complex eigensolver failed");
    }
    const Eigen::MatrixXcd& V = es.eigenvectors();
    const Eigen::MatrixXcd Vinv = V.inverse();
    for (double t : times) {
        cplx acc{};
        for (Eigen::Index n = 0; n < V.cols(); ++n) {
            acc += V(0, n) * std::exp(-I * es.eigenvalues()(n) * t) * Vinv(n, 0);
        }
        out.push_back(acc);
    }
    return out;
}

// --------------------------------------------------------------- pulsed ----

double pulsed_run(const SystemParams& params, const DiscretizedBath& bath, double tau, long n) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorKind::Domain, "pulsed_run: tau must be > 0");
    if (n < 1) throw Error(ErrorKind::Domain, "pulsed_run: n must be >= 1");
    const auto h = build_hamiltonian(params, HamiltonianKind::bare(), bath);
    const SurvivalPropagator prop(h);
    const double one[] = {tau};
    const cplx single = prop.amplitudes(one).front();

    // State vector in the eigenbasis of H; |a> has components u_n = <n|a>.
    const auto E = prop.spectrum().energies();
    const auto w = prop.spectrum().weights();
    const std::size_t dim = E.size();
    std::vector<double> u(dim);
    std::vector<cplx> rot(dim), psi(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        u[k] = std::sqrt(w[k]);
        rot[k] = std::polar(1.0, -E[k] * tau);
        psi[k] = u[k];
    }
    double survival = 1.0;
    for (long cycle = 0; cycle < n; ++cycle) {
        cplx overlap{};
        for (std::size_t k = 0; k < dim; ++k) {
            psi[k] *= rot[k];
            overlap += u[k] * psi[k];
        }
        const double p = std::norm(overlap);
        survival *= p;
        if (p == 0.0) break;
        // Projection onto |a>, renormalized.
        const cplx phase = overlap / std::abs(overlap);
        for (std::size_t k = 0; k < dim; ++k) psi[k] = phase * u[k];
    }
    const double power = std::pow(std::norm(single), static_cast<double>(n));
    if (std::abs(survival - power) > 1e-10 * std::max(power, 1e-300)) {
        throw Error(ErrorKind::NumericalFailure,
                    "projection loop disagrees with |A(tau)|^(2n): " + fmt(survival) + " vs " + fmt(power));
    }
    return survival;
}

// ------------------------------------------------------------ empirical ----

FitReport fit_gamma_eff(const SystemParams& params, const DiscretizedBath& bath,
                        const MeasurementScheme& scheme) {
    FitReport report;
    if (const auto* p = std::get_if<Pulsed>(&scheme)) {
        if (!(p->tau > 0.0)) throw Error(ErrorKind::Domain, "tau must be > 0");
        const auto h = build_hamiltonian(params, HamiltonianKind::bare(), bath);
        const double t[] = {p->tau};
        const double prob = std::norm(evolve_survival(h, t).front());
        if (!(prob > 0.0)) throw Error(ErrorKind::NumericalFailure, "survival underflow in pulsed oracle");
        report.gamma_eff = -std::log(prob) / p->tau;
        report.t_start = report.t_end = p->tau;
        report.samples = 1;
        return report;
    }

    HamiltonianKind kind;
    double transient = 0.0;
    double trusted = bath.recurrence_guard();
    const double band = bath.bandwidth();
    if (const auto* c = std::get_if<Continuous>(&scheme)) {
        if (!(c->big_gamma > 0.0)) throw Error(ErrorKind::Domain, "Gamma must be > 0");
        kind = HamiltonianKind::continuous(c->big_gamma);
        transient = 10.0 / (band + 0.5 * c->big_gamma);
    } else {
        const double K = std::get<Rabi>(scheme).k;
        if (!(K >= 0.0)) throw Error(ErrorKind::Domain, "K must be >= 0");
        kind = HamiltonianKind::rabi(K);
        transient = 10.0 / band;
        // Rabi splitting feeds the decay from bath modes at omega_a -/+ K; their
        // comb spacing sets the recurrence that matters.
        for (double w : {params.omega_a - K, params.omega_a + K}) {
            trusted = std::min(trusted, std::numbers::pi / bath.local_spacing(w));
        }
    }
    const auto h = build_hamiltonian(params, kind, bath);
    const SurvivalPropagator prop(h);

    constexpr std::size_t kSamples = 4001;
    const double target = std::exp(-1.0);
    double horizon = std::min(trusted, 50.0 * transient);
    std::vector<double> prob;
    for (;;) {
        const double step = horizon / static_cast<double>(kSamples - 1);
        const auto amps = prop.amplitudes_uniform(step, kSamples);
        prob.resize(amps.size());
        for (std::size_t j = 0; j < amps.size(); ++j) prob[j] = std::norm(amps[j]);
        if (prob.back() <= target || horizon >= trusted) break;
        horizon = std::min(trusted, 2.0 * horizon);
    }
    const double step = horizon / static_cast<double>(kSamples - 1);
    std::size_t last = prob.size() - 1;
    for (std::size_t j = 0; j < prob.size(); ++j) {
        if (prob[j] <= target) {
            last = j;
            break;
        }
    }
    const auto first = static_cast<std::size_t>(std::ceil(transient / step));
    if (first + 8 > last) {
        throw Error(ErrorKind::NumericalFailure,
                    "fit window empty: transient ends at t=" + fmt(transient) +
                        " but the trusted window closes at t=" + fmt(step * static_cast<double>(last)));
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t j = first; j <= last; ++j) {
        if (!(prob[j] > 0.0)) throw Error(ErrorKind::NumericalFailure, "survival underflow in fit window");
        const double x = step * static_cast<double>(j);
        const double y = std::log(prob[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double cn = static_cast<double>(count);
    const double slope = (sxy - sx * sy / cn) / (sxx - sx * sx / cn);
    report.gamma_eff = -slope;
    report.t_start = step * static_cast<double>(first);
    report.t_end = step * static_cast<double>(last);
    report.samples = count;
    return report;
}

double empirical_gamma_eff(const SystemParams& params, const DiscretizedBath& bath,
                           const MeasurementScheme& scheme) {
    return fit_gamma_eff(params, bath, scheme).gamma_eff;
}

} // namespace zeno::oracle
