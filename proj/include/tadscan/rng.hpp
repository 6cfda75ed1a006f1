#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tadscan {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with a splitmix64-expanded seed. Streams for parallel work are
// derived per task index so results do not depend on the worker count.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    static Rng for_stream(uint64_t seed, uint64_t stream) {
        uint64_t s = seed;
        splitmix64(s);
        s ^= 0x5851f42d4c957f2dULL * (stream + 1);
        return Rng(s);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1)
    double uniform_pos() {
        double u;
        do { u = uniform(); } while (u <= 0.0);
        return u;
    }

    uint64_t uniform_below(uint64_t bound) {
        // Lemire-style rejection to stay unbiased.
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        uint64_t lo = static_cast<uint64_t>(m);
        if (lo < bound) {
            uint64_t threshold = (0ULL - bound) % bound;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // integer in [lo, hi] inclusive
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(uniform_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
    double gamma(double shape, double scale) {
        if (!(shape > 0.0) || !(scale > 0.0)) throw std::invalid_argument("gamma: shape and scale must be positive");
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    long poisson(double mean) {
        if (mean < 0.0 || !std::isfinite(mean)) throw std::invalid_argument("poisson: bad mean");
        if (mean == 0.0) return 0;
        if (mean < 10.0) {
            // Knuth product-of-uniforms
            const double limit = std::exp(-mean);
            long k = 0;
            double p = uniform();
            while (p > limit) {
                ++k;
                p *= uniform();
            }
            return k;
        }
        return poisson_ptrd(mean);
    }

    // NB with mean mu and variance mu + nu*mu^2, sampled as a gamma-poisson
    // mixture (rate ~ Gamma(1/nu, nu*mu)). nu == 0 degenerates to Poisson.
    long negative_binomial(double mu, double nu) {
        if (mu < 0.0 || nu < 0.0) throw std::invalid_argument("negative_binomial: bad parameters");
        if (mu == 0.0) return 0;
        if (nu == 0.0) return poisson(mu);
        const double lambda = gamma(1.0 / nu, nu * mu);
        return poisson(lambda);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    // Hormann's PTRD transformed-rejection sampler for mean >= 10.
    long poisson_ptrd(double mu) {
        const double smu = std::sqrt(mu);
        const double b = 0.931 + 2.53 * smu;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            double u;
            double v = uniform();
            if (v <= 0.86 * v_r) {
                u = v / v_r - 0.43;
                return static_cast<long>(std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + mu + 0.445));
            }
            if (v >= v_r) {
                u = uniform() - 0.5;
            } else {
                u = v / v_r - 0.93;
                u = (u < 0 ? -0.5 : 0.5) - u;
                v = uniform() * v_r;
            }
            const double us = 0.5 - std::fabs(u);
            if (us < 0.013 && v > us) continue;
            const double k = std::floor((2.0 * a / us + b) * u + mu + 0.445);
            v = v * inv_alpha / (a / (us * us) + b);
            const double log_sqrt_2pi = 0.91893853320467267;
            if (k >= 10.0) {
                const double t = (k + 0.5) * std::log(mu / k) - mu - log_sqrt_2pi + k
                               - (1.0 / 12.0 - 1.0 / (360.0 * k * k)) / k;
                if (std::log(v * smu) <= t) return static_cast<long>(k);
            } else if (k >= 0.0) {
                const double t = k * std::log(mu) - mu - std::lgamma(k + 1.0);
                if (std::log(v) <= t) return static_cast<long>(k);
            }
        }
    }

    uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace tadscan
