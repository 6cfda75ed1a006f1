#include <doctest.h>

#include <cmath>
#include <vector>

#include "tadscan/kernels.hpp"
#include "tadscan/rng.hpp"

using namespace tadscan;

TEST_SUITE("kernels") {

TEST_CASE("simd z_profile matches scalar reference") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t count = 1 + static_cast<size_t>(rng.uniform_below(70));
        std::vector<double> u(count), v(count), w1(count), w2(count);
        const double wa = 5000.0 + rng.uniform() * 100.0;
        for (size_t k = 0; k < count; ++k) {
            w1[k] = 1.0 + rng.uniform() * 100.0;
            w2[k] = w1[k] + 1.0 + rng.uniform() * 500.0;
            u[k] = rng.normal() * 50.0;
            v[k] = u[k] + std::fabs(rng.normal()) * 30.0;
        }
        const double sa = 123.45;
        kernels::ZProfileIn in{u.data(), v.data(), w1.data(), w2.data(), wa, sa, 0.5};
        std::vector<double> z_ref(count), z_active(count);
        kernels::z_profile_scalar(in, z_ref.data(), count);
        kernels::z_profile(in, z_active.data(), count);
        for (size_t k = 0; k < count; ++k) {
            CHECK(z_active[k] == doctest::Approx(z_ref[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("simd reductions match scalar reference") {
    Rng rng(22);
    for (size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 64ul, 1001ul}) {
        std::vector<double> x(n), dst_ref(n, 1.0), dst_active(n, 1.0);
        for (auto& v : x) v = rng.normal();
        CHECK(kernels::reduce_sum(x.data(), n) ==
              doctest::Approx(kernels::reduce_sum_scalar(x.data(), n)).epsilon(1e-12));
        kernels::vec_add_scalar(dst_ref.data(), x.data(), n);
        kernels::vec_add(dst_active.data(), x.data(), n);
        for (size_t i = 0; i < n; ++i) CHECK(dst_active[i] == doctest::Approx(dst_ref[i]));
    }
}

TEST_CASE("backend is selected and switchable") {
    const std::string original = kernels::active_backend();
    CHECK((original == "scalar" || original == "avx2" || original == "neon"));
    CHECK(kernels::set_backend("scalar"));
    CHECK(kernels::active_backend() == "scalar");
    CHECK(kernels::set_backend(original));
    CHECK_FALSE(kernels::set_backend("no-such-backend"));
}

} // TEST_SUITE
