#include "kernels_impl.hpp"

namespace zeno::kernels::detail {

SecularSums secular_scalar(const double* off, const double* w, std::size_t n, double delta) {
    SecularSums out;
    for (std::size_t k = 0; k < n; ++k) {
        const double inv = 1.0 / (off[k] + delta);
        const double t = w[k] * inv;
        out.s1 += t;
        out.s2 += t * inv;
    }
    return out;
}

std::complex<double> phasor_scalar(double* zr, double* zi, const double* rr, const double* ri,
                                   const double* w, std::size_t n) {
    double ar = 0.0;
    double ai = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        ar += w[k] * zr[k];
        ai += w[k] * zi[k];
        const double nr = zr[k] * rr[k] - zi[k] * ri[k];
        const double ni = zr[k] * ri[k] + zi[k] * rr[k];
        zr[k] = nr;
        zi[k] = ni;
    }
    return {ar, ai};
}

std::complex<double> relax_scalar(double* gr, double* gi, const double* er, const double* ei,
                                  const double* dr, const double* di, const double* w, std::size_t n,
                                  std::complex<double> a) {
    const double xr = a.real();
    const double xi = a.imag();
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double nr = gr[k] * er[k] - gi[k] * ei[k] + (xr * dr[k] - xi * di[k]);
        const double ni = gr[k] * ei[k] + gi[k] * er[k] + (xr * di[k] + xi * dr[k]);
        gr[k] = nr;
        gi[k] = ni;
        sr += w[k] * nr;
        si += w[k] * ni;
    }
    return {sr, si};
}

} // namespace zeno::kernels::detail
