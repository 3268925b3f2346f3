#pragma once

#include "zeno/kernels.hpp"

namespace zeno::kernels::detail {

SecularSums secular_scalar(const double* off, const double* w, std::size_t n, double delta);
std::complex<double> phasor_scalar(double* zr, double* zi, const double* rr, const double* ri,
                                   const double* w, std::size_t n);
std::complex<double> relax_scalar(double* gr, double* gi, const double* er, const double* ei,
                                  const double* dr, const double* di, const double* w, std::size_t n,
                                  std::complex<double> a);

#ifdef ZENO_HAVE_AVX2
SecularSums secular_avx2(const double* off, const double* w, std::size_t n, double delta);
std::complex<double> phasor_avx2(double* zr, double* zi, const double* rr, const double* ri,
                                 const double* w, std::size_t n);
std::complex<double> relax_avx2(double* gr, double* gi, const double* er, const double* ei,
                                const double* dr, const double* di, const double* w, std::size_t n,
                                std::complex<double> a);
#endif

} // namespace zeno::kernels::detail
