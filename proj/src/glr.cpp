#include "tadscan/glr.hpp"

#include <cmath>
#include <stdexcept>

#include "tadscan/kernels.hpp"

namespace tadscan {

double z_stat(const RegionSums& sums, int32_t m, double sigma0_sq) {
    if (m < sums.lo() || m >= sums.hi())
        throw std::invalid_argument("z_stat: cut outside window");
    if (!(sigma0_sq > 0.0)) throw std::invalid_argument("z_stat: sigma0_sq must be positive");
    const double w1 = static_cast<double>(sums.cells_a1(m));
    const double w2 = w1 + static_cast<double>(sums.cells_r(m));
    const double wa = static_cast<double>(sums.cells_all());
    if (!(w1 > 0.0) || !(w2 > w1) || !(wa > w2))
        throw std::invalid_argument("z_stat: degenerate block geometry");
    const double u = sums.s_a1(m);
    const double v = sums.s_a1r(m);
    const double d1 = u - (w1 / w2) * v;
    const double d2 = v - (w2 / wa) * sums.s_all();
    const double t1 = d1 * d1 / (w1 * (1.0 - w1 / w2));
    const double t2 = d2 * d2 / (w2 * (1.0 - w2 / wa));
    return (t1 + t2) / (2.0 * sigma0_sq);
}

double z_stat_gaussian_form(const RegionSums& sums, int32_t m, double sigma0_sq) {
    if (m < sums.lo() || m >= sums.hi())
        throw std::invalid_argument("z_stat_gaussian_form: cut outside window");
    const double s1 = sums.s_a1(m);
    const double s2 = sums.s_a2(m);
    const double sr = sums.s_r(m);
    const double sa = sums.s_all();
    const double q = s1 * s1 / static_cast<double>(sums.cells_a1(m))
                   + s2 * s2 / static_cast<double>(sums.cells_a2(m))
                   + sr * sr / static_cast<double>(sums.cells_r(m))
                   - sa * sa / static_cast<double>(sums.cells_all());
    return q / (2.0 * sigma0_sq);
}

double estimate_sigma0(const RegionSums& sums) {
    const double cells = static_cast<double>(sums.cells_all());
    if (cells < 2.0) throw std::invalid_argument("estimate_sigma0: window needs >= 2 cells");
    const double s = sums.s_all();
    const double var = (sums.sumsq_all() - s * s / cells) / (cells - 1.0);
    return std::max(var, kSigma0Floor);
}

double estimate_sigma0(const ContactMatrix& m, int32_t lo, int32_t hi) {
    return estimate_sigma0(RegionSums(m, lo, hi));
}

double glr_nb(const RegionSums& sums, int32_t m, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("glr_nb: r must be positive");
    if (m < sums.lo() || m >= sums.hi()) throw std::invalid_argument("glr_nb: cut outside window");
    const auto term = [r](double s, double cells) {
        if (cells <= 0.0) return 0.0;
        const double mean = s / cells;
        double t = r * cells * std::log(r / (r + mean));
        if (s > 0.0) t += s * std::log(mean / (r + mean));
        return t;
    };
    const double t1 = term(sums.s_a1(m), static_cast<double>(sums.cells_a1(m)));
    const double t2 = term(sums.s_a2(m), static_cast<double>(sums.cells_a2(m)));
    const double tr = term(sums.s_r(m), static_cast<double>(sums.cells_r(m)));
    const double ta = term(sums.s_all(), static_cast<double>(sums.cells_all()));
    return t1 + t2 + tr - ta;
}

ScanResult scan_window(const RegionSums& sums, int32_t xi, bool keep_profile,
                       std::optional<double> sigma0_sq) {
    if (xi < 1) throw std::invalid_argument("scan_window: xi must be >= 1");
    const int32_t lo = sums.lo();
    const int32_t hi = sums.hi();
    const int64_t t = sums.size();
    const int64_t count = admissible_cuts(t, xi);
    if (count < 1)
        throw std::invalid_argument("scan_window: window smaller than 2*xi has no admissible split");

    ScanResult res;
    res.lo = lo;
    res.hi = hi;
    res.sigma0_sq = sigma0_sq ? *sigma0_sq : estimate_sigma0(sums);

    // cuts m = lo+xi-1 .. hi-xi keep both blocks >= xi bins
    const int32_t m0 = lo + xi - 1;
    res.first_cut = m0;
    std::vector<double> u(count), v(count), w1(count), w2(count), z(count);
    for (int64_t k = 0; k < count; ++k) {
        const int32_t m = m0 + static_cast<int32_t>(k);
        u[k] = sums.s_a1(m);
        v[k] = sums.s_a1r(m);
        const double a = static_cast<double>(m - lo + 1);
        w1[k] = a * (a + 1.0) / 2.0;
        w2[k] = w1[k] + a * static_cast<double>(hi - m);
    }
    kernels::ZProfileIn in{u.data(), v.data(), w1.data(), w2.data(),
                           static_cast<double>(sums.cells_all()), sums.s_all(),
                           1.0 / (2.0 * res.sigma0_sq)};
    kernels::z_profile(in, z.data(), static_cast<size_t>(count));

    int64_t best = 0;
    for (int64_t k = 1; k < count; ++k) {
        if (z[k] > z[best]) best = k;
    }
    res.best_cut = m0 + static_cast<int32_t>(best);
    res.z_tilde = z[best];
    if (keep_profile) res.z_profile = std::move(z);
    return res;
}

ScanResult scan_window(const ContactMatrix& m, int32_t lo, int32_t hi, int32_t xi,
                       bool keep_profile, std::optional<double> sigma0_sq) {
    return scan_window(RegionSums(m, lo, hi), xi, keep_profile, sigma0_sq);
}

int32_t default_min_tad_bins(int64_t resolution) {
    const int64_t xi = (100000 + resolution - 1) / resolution;
    return static_cast<int32_t>(std::max<int64_t>(xi, 2));
}

} // namespace tadscan
