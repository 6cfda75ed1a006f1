#include "tadscan/kernels.hpp"

namespace tadscan::kernels {

void z_profile_scalar(const ZProfileIn& in, double* z, std::size_t count) {
    const double wa = in.w_all;
    const double sa = in.s_all;
    const double c = in.inv_two_sigma0;
    for (std::size_t k = 0; k < count; ++k) {
        const double w1 = in.w1[k];
        const double w2 = in.w2[k];
        const double f12 = w1 / w2;
        const double f2a = w2 / wa;
        const double d1 = in.u[k] - f12 * in.v[k];
        const double d2 = in.v[k] - f2a * sa;
        const double t1 = d1 * d1 / (w1 * (1.0 - f12));
        const double t2 = d2 * d2 / (w2 * (1.0 - f2a));
        z[k] = c * (t1 + t2);
    }
}

double reduce_sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

void vec_add_scalar(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

} // namespace tadscan::kernels
