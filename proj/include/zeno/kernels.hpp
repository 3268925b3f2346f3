// kernels.hpp: data-parallel inner loops with scalar and AVX2 variants
//
// The scalar table is the reference. The AVX2 table (when compiled in and
// supported by the CPU) is chosen at first use; the ZENO_KERNELS environment
// variable ("scalar" or "avx2") overrides the choice. Both variants reduce in
// a fixed order, so a given variant is bit-reproducible run to run.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace zeno::kernels {

struct SecularSums {
    double s1 = 0.0; // sum w_k / (off_k + delta)
    double s2 = 0.0; // sum w_k / (off_k + delta)^2
};

using SecularFn = SecularSums (*)(const double* off, const double* w, std::size_t n, double delta);

// Returns sum_n w_n z_n, then advances z_n <- z_n * rot_n.
using PhasorFn = std::complex<double> (*)(double* zr, double* zi, const double* rr,
                                          const double* ri, const double* w, std::size_t n);

// Forced relaxation: g_n <- e_n g_n + a d_n, then returns sum w_n g_n.
using RelaxFn = std::complex<double> (*)(double* gr, double* gi, const double* er, const double* ei,
                                         const double* dr, const double* di, const double* w,
                                         std::size_t n, std::complex<double> a);

struct KernelTable {
    const char* name;
    SecularFn secular;
    PhasorFn phasor;
    RelaxFn relax;
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;
bool cpu_supports_avx2() noexcept;

/// Currently selected table.
const KernelTable& active() noexcept;
/// Select "scalar" or "avx2"; returns false (and leaves the selection) if unavailable.
bool select(std::string_view name) noexcept;

inline SecularSums secular_sums(std::span<const double> off, std::span<const double> w,
                                double delta) {
    return active().secular(off.data(), w.data(), off.size(), delta);
}

inline std::complex<double> phasor_step(std::span<double> zr, std::span<double> zi,
                                        std::span<const double> rr, std::span<const double> ri,
                                        std::span<const double> w) {
    return active().phasor(zr.data(), zi.data(), rr.data(), ri.data(), w.data(), zr.size());
}

inline std::complex<double> relax_step(std::span<double> gr, std::span<double> gi,
                                       std::span<const double> er, std::span<const double> ei,
                                       std::span<const double> dr, std::span<const double> di,
                                       std::span<const double> w, std::complex<double> a) {
    return active().relax(gr.data(), gi.data(), er.data(), ei.data(), dr.data(), di.data(), w.data(),
                          gr.size(), a);
}

} // namespace zeno::kernels
