// NEON is baseline on aarch64, so no special compile flags are needed.
#include "tadscan/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace tadscan::kernels {

void z_profile_neon(const ZProfileIn& in, double* z, std::size_t count) {
    const float64x2_t wa = vdupq_n_f64(in.w_all);
    const float64x2_t sa = vdupq_n_f64(in.s_all);
    const float64x2_t c = vdupq_n_f64(in.inv_two_sigma0);
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t k = 0;
    for (; k + 2 <= count; k += 2) {
        const float64x2_t w1 = vld1q_f64(in.w1 + k);
        const float64x2_t w2 = vld1q_f64(in.w2 + k);
        const float64x2_t u = vld1q_f64(in.u + k);
        const float64x2_t v = vld1q_f64(in.v + k);
        const float64x2_t f12 = vdivq_f64(w1, w2);
        const float64x2_t f2a = vdivq_f64(w2, wa);
        const float64x2_t d1 = vsubq_f64(u, vmulq_f64(f12, v));
        const float64x2_t d2 = vsubq_f64(v, vmulq_f64(f2a, sa));
        const float64x2_t den1 = vmulq_f64(w1, vsubq_f64(one, f12));
        const float64x2_t den2 = vmulq_f64(w2, vsubq_f64(one, f2a));
        const float64x2_t t1 = vdivq_f64(vmulq_f64(d1, d1), den1);
        const float64x2_t t2 = vdivq_f64(vmulq_f64(d2, d2), den2);
        vst1q_f64(z + k, vmulq_f64(c, vaddq_f64(t1, t2)));
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

double reduce_sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double out = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) out += x[i];
    return out;
}

void vec_add_neon(double* dst, const double* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vld1q_f64(src + i)));
    for (; i < n; ++i) dst[i] += src[i];
}

} // namespace tadscan::kernels

#endif
