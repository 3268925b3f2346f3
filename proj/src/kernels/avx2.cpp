// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace zeno::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    // Fixed lane order: ((l0 + l1) + (l2 + l3)).
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d pair_lo = _mm_add_sd(lo, _mm_unpackhi_pd(lo, lo));
    __m128d pair_hi = _mm_add_sd(hi, _mm_unpackhi_pd(hi, hi));
    return _mm_cvtsd_f64(_mm_add_sd(pair_lo, pair_hi));
}

} // namespace

SecularSums secular_avx2(const double* off, const double* w, std::size_t n, double delta) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d d = _mm256_set1_pd(delta);
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d x = _mm256_add_pd(_mm256_loadu_pd(off + k), d);
        const __m256d inv = _mm256_div_pd(one, x);
        const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(w + k), inv);
        s1 = _mm256_add_pd(s1, t);
        s2 = _mm256_fmadd_pd(t, inv, s2);
    }
    SecularSums out{hsum(s1), hsum(s2)};
    const SecularSums tail = secular_scalar(off + k, w + k, n - k, delta);
    out.s1 += tail.s1;
    out.s2 += tail.s2;
    return out;
}

std::complex<double> phasor_avx2(double* zr, double* zi, const double* rr, const double* ri,
                                 const double* w, std::size_t n) {
    __m256d ar = _mm256_setzero_pd();
    __m256d ai = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d xr = _mm256_loadu_pd(zr + k);
        const __m256d xi = _mm256_loadu_pd(zi + k);
        const __m256d wr = _mm256_loadu_pd(w + k);
        ar = _mm256_fmadd_pd(wr, xr, ar);
        ai = _mm256_fmadd_pd(wr, xi, ai);
        const __m256d qr = _mm256_loadu_pd(rr + k);
        const __m256d qi = _mm256_loadu_pd(ri + k);
        const __m256d nr = _mm256_fmsub_pd(xr, qr, _mm256_mul_pd(xi, qi));
        const __m256d ni = _mm256_fmadd_pd(xr, qi, _mm256_mul_pd(xi, qr));
        _mm256_storeu_pd(zr + k, nr);
        _mm256_storeu_pd(zi + k, ni);
    }
    std::complex<double> acc{hsum(ar), hsum(ai)};
    acc += phasor_scalar(zr + k, zi + k, rr + k, ri + k, w + k, n - k);
    return acc;
}

std::complex<double> relax_avx2(double* gr, double* gi, const double* er, const double* ei,
                                const double* dr, const double* di, const double* w, std::size_t n,
                                std::complex<double> a) {
    const __m256d xr = _mm256_set1_pd(a.real());
    const __m256d xi = _mm256_set1_pd(a.imag());
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d g_r = _mm256_loadu_pd(gr + k), g_i = _mm256_loadu_pd(gi + k);
        const __m256d e_r = _mm256_loadu_pd(er + k), e_i = _mm256_loadu_pd(ei + k);
        const __m256d d_r = _mm256_loadu_pd(dr + k), d_i = _mm256_loadu_pd(di + k);
        const __m256d f_r = _mm256_fmsub_pd(xr, d_r, _mm256_mul_pd(xi, d_i));
        const __m256d f_i = _mm256_fmadd_pd(xr, d_i, _mm256_mul_pd(xi, d_r));
        const __m256d nr = _mm256_add_pd(_mm256_fmsub_pd(g_r, e_r, _mm256_mul_pd(g_i, e_i)), f_r);
        const __m256d ni = _mm256_add_pd(_mm256_fmadd_pd(g_r, e_i, _mm256_mul_pd(g_i, e_r)), f_i);
        _mm256_storeu_pd(gr + k, nr);
        _mm256_storeu_pd(gi + k, ni);
        const __m256d ww = _mm256_loadu_pd(w + k);
        sr = _mm256_fmadd_pd(ww, nr, sr);
        si = _mm256_fmadd_pd(ww, ni, si);
    }
    std::complex<double> acc{hsum(sr), hsum(si)};
    acc += relax_scalar(gr + k, gi + k, er + k, ei + k, dr + k, di + k, w + k, n - k, a);
    return acc;
}

} // namespace zeno::kernels::detail
