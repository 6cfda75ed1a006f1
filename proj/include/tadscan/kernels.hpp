#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops with a scalar reference implementation and SIMD
// variants selected once at runtime (AVX2 on x86-64, NEON on aarch64). The
// scalar and SIMD paths are equivalence-tested against each other.
namespace tadscan::kernels {

// For each candidate split k (0-based over the admissible range):
//   t1 = (U[k] - (w1[k]/w2[k]) * V[k])^2 / (w1[k] * (1 - w1[k]/w2[k]))
//   t2 = (V[k] - (w2[k]/w_all) * s_all)^2 / (w2[k] * (1 - w2[k]/w_all))
//   z[k] = inv_two_sigma0 * (t1 + t2)
// where U = left-triangle sums, V = left-rows sums, w1/w2 the matching region
// measures. Requires 0 < w1[k] < w2[k] < w_all.
struct ZProfileIn {
    const double* u;
    const double* v;
    const double* w1;
    const double* w2;
    double w_all;
    double s_all;
    double inv_two_sigma0;
};

using ZProfileFn = void (*)(const ZProfileIn&, double* z, std::size_t count);
using ReduceSumFn = double (*)(const double* x, std::size_t n);
using VecAddFn = void (*)(double* dst, const double* src, std::size_t n);

void z_profile(const ZProfileIn& in, double* z, std::size_t count);
double reduce_sum(const double* x, std::size_t n);
void vec_add(double* dst, const double* src, std::size_t n);

// Reference path, always available (used by the equivalence tests).
void z_profile_scalar(const ZProfileIn& in, double* z, std::size_t count);
double reduce_sum_scalar(const double* x, std::size_t n);
void vec_add_scalar(double* dst, const double* src, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
void z_profile_avx2(const ZProfileIn& in, double* z, std::size_t count);
double reduce_sum_avx2(const double* x, std::size_t n);
void vec_add_avx2(double* dst, const double* src, std::size_t n);
#endif
#if defined(__aarch64__)
void z_profile_neon(const ZProfileIn& in, double* z, std::size_t count);
double reduce_sum_neon(const double* x, std::size_t n);
void vec_add_neon(double* dst, const double* src, std::size_t n);
#endif

// Name of the backend picked at startup: "scalar", "avx2" or "neon".
const std::string& active_backend();

// Force a backend by name (tests); returns false if unavailable on this host.
bool set_backend(const std::string& name);

} // namespace tadscan::kernels
