// arrowhead.hpp: exact eigendecomposition of a real symmetric arrowhead matrix
//
//     [ alpha  g^T ]
//     [ g      D   ]      D = diag(d_k)
//
// which is the single-excitation Hamiltonian of a level coupled to discrete
// modes. Eigenvalues are the roots of the secular function
//     f(E) = E - alpha - sum_k g_k^2 / (E - d_k),
// one per gap between consecutive coupled poles plus one beyond each end.
// Each root is stored as (origin pole, offset) so that E - d_k keeps full
// relative accuracy next to its nearest pole.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zeno::oracle {

class ArrowheadSpectrum {
public:
    ArrowheadSpectrum(double alpha, std::span<const double> poles,
                      std::span<const double> couplings);

    std::size_t size() const noexcept { return energies_.size(); }
    std::span<const double> energies() const noexcept { return energies_; }
    /// |<a|n>|^2 for every eigenvalue (zero for deflated, decoupled levels).
    std::span<const double> weights() const noexcept { return weights_; }

    /// Coupled modes after merging coincident poles (orthonormal rotation of the
    /// original mode subspace restricted to its coupled part).
    std::span<const double> coupled_poles() const noexcept { return poles_; }
    std::span<const double> coupled_couplings() const noexcept { return g_; }

    /// <mode j | n> for coupled mode j and coupled eigenvalue index n (0 for
    /// deflated eigenvalues).
    double mode_component(std::size_t j, std::size_t n) const;

    std::size_t iterations() const noexcept { return iterations_; }

private:
    double alpha_;
    std::vector<double> poles_;
    std::vector<double> g_;
    std::vector<double> g2_;
    std::vector<double> energies_;
    std::vector<double> weights_;
    // Per eigenvalue: origin pole index (or npos for deflated) and offset.
    std::vector<std::size_t> origin_;
    std::vector<double> delta_;
    std::size_t iterations_ = 0;
};

} // namespace zeno::oracle
