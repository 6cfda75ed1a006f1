#include "tadscan/kernels.hpp"

namespace tadscan::kernels {

namespace {

struct Backend {
    std::string name;
    ZProfileFn z_profile;
    ReduceSumFn reduce_sum;
    VecAddFn vec_add;
};

Backend pick_backend() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) {
        return {"avx2", &z_profile_avx2, &reduce_sum_avx2, &vec_add_avx2};
    }
#endif
#if defined(__aarch64__)
    return {"neon", &z_profile_neon, &reduce_sum_neon, &vec_add_neon};
#endif
    return {"scalar", &z_profile_scalar, &reduce_sum_scalar, &vec_add_scalar};
}

Backend& backend() {
    static Backend b = pick_backend();
    return b;
}

} // namespace

void z_profile(const ZProfileIn& in, double* z, std::size_t count) { backend().z_profile(in, z, count); }
double reduce_sum(const double* x, std::size_t n) { return backend().reduce_sum(x, n); }
void vec_add(double* dst, const double* src, std::size_t n) { backend().vec_add(dst, src, n); }

const std::string& active_backend() { return backend().name; }

bool set_backend(const std::string& name) {
    if (name == "scalar") {
        backend() = {"scalar", &z_profile_scalar, &reduce_sum_scalar, &vec_add_scalar};
        return true;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && __builtin_cpu_supports("avx2")) {
        backend() = {"avx2", &z_profile_avx2, &reduce_sum_avx2, &vec_add_avx2};
        return true;
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") {
        backend() = {"neon", &z_profile_neon, &reduce_sum_neon, &vec_add_neon};
        return true;
    }
#endif
    return false;
}

} // namespace tadscan::kernels
