#include <doctest.h>

#include <cmath>
#include <vector>

#include "tadscan/rng.hpp"

using tadscan::Rng;

namespace {

struct Moments {
    double mean, var;
};

template <typename F>
Moments sample_moments(F&& draw, int n) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    return {mean, s2 / n - mean * mean};
}

} // namespace

TEST_SUITE("rng") {

TEST_CASE("streams are deterministic and distinct") {
    Rng a = Rng::for_stream(42, 0);
    Rng b = Rng::for_stream(42, 0);
    Rng c = Rng::for_stream(42, 1);
    bool all_equal = true, any_equal_c = false;
    for (int i = 0; i < 100; ++i) {
        const uint64_t x = a.next_u64();
        all_equal = all_equal && x == b.next_u64();
        any_equal_c = any_equal_c || x == c.next_u64();
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_c);
}

TEST_CASE("normal moments") {
    Rng rng(7);
    const auto m = sample_moments([&] { return rng.normal(); }, 200000);
    CHECK(std::fabs(m.mean) < 0.01);
    CHECK(std::fabs(m.var - 1.0) < 0.02);
}

TEST_CASE("gamma moments match shape*scale and shape*scale^2") {
    Rng rng(8);
    const double shape = 4.0, scale = 18.0;
    const auto m = sample_moments([&] { return rng.gamma(shape, scale); }, 200000);
    CHECK(m.mean == doctest::Approx(shape * scale).epsilon(0.01));
    CHECK(m.var == doctest::Approx(shape * scale * scale).epsilon(0.03));
}

TEST_CASE("gamma with shape below one") {
    Rng rng(9);
    const auto m = sample_moments([&] { return rng.gamma(0.5, 2.0); }, 200000);
    CHECK(m.mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m.var == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("poisson moments across the small/large switch") {
    Rng rng(10);
    for (double mu : {2.5, 9.5, 10.5, 80.0}) {
        const auto m = sample_moments([&] { return double(rng.poisson(mu)); }, 120000);
        CHECK(m.mean == doctest::Approx(mu).epsilon(0.02));
        CHECK(m.var == doctest::Approx(mu).epsilon(0.05));
    }
}

TEST_CASE("negative binomial has mean mu and variance mu + nu*mu^2") {
    Rng rng(11);
    const double mu = 72.0, nu = 0.0225; // sqrt_nu = 0.15
    const auto m = sample_moments([&] { return double(rng.negative_binomial(mu, nu)); }, 200000);
    CHECK(m.mean == doctest::Approx(mu).epsilon(0.01));
    CHECK(m.var == doctest::Approx(mu + nu * mu * mu).epsilon(0.04));
    // nu = 0 degenerates to Poisson
    const auto p = sample_moments([&] { return double(rng.negative_binomial(10.0, 0.0)); }, 100000);
    CHECK(p.var == doctest::Approx(10.0).epsilon(0.05));
}

} // TEST_SUITE
