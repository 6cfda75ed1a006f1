// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.
#include "tadscan/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace tadscan::kernels {

void z_profile_avx2(const ZProfileIn& in, double* z, std::size_t count) {
    const __m256d wa = _mm256_set1_pd(in.w_all);
    const __m256d sa = _mm256_set1_pd(in.s_all);
    const __m256d c = _mm256_set1_pd(in.inv_two_sigma0);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        const __m256d w1 = _mm256_loadu_pd(in.w1 + k);
        const __m256d w2 = _mm256_loadu_pd(in.w2 + k);
        const __m256d u = _mm256_loadu_pd(in.u + k);
        const __m256d v = _mm256_loadu_pd(in.v + k);
        const __m256d f12 = _mm256_div_pd(w1, w2);
        const __m256d f2a = _mm256_div_pd(w2, wa);
        const __m256d d1 = _mm256_fnmadd_pd(f12, v, u);
        const __m256d d2 = _mm256_fnmadd_pd(f2a, sa, v);
        const __m256d den1 = _mm256_mul_pd(w1, _mm256_sub_pd(one, f12));
        const __m256d den2 = _mm256_mul_pd(w2, _mm256_sub_pd(one, f2a));
        const __m256d t1 = _mm256_div_pd(_mm256_mul_pd(d1, d1), den1);
        const __m256d t2 = _mm256_div_pd(_mm256_mul_pd(d2, d2), den2);
        _mm256_storeu_pd(z + k, _mm256_mul_pd(c, _mm256_add_pd(t1, t2)));
    }
    if (k < count) {
        ZProfileIn tail = in;
        tail.u += k;
        tail.v += k;
        tail.w1 += k;
        tail.w2 += k;
        z_profile_scalar(tail, z + k, count - k);
    }
}

double reduce_sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double out = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) out += x[i];
    return out;
}

void vec_add_avx2(double* dst, const double* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
    }
    for (; i < n; ++i) dst[i] += src[i];
}

} // namespace tadscan::kernels

#endif
