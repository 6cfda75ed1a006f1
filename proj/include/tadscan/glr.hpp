#pragma once

#include <optional>
#include <vector>

#include "tadscan/contact_matrix.hpp"

namespace tadscan {

// Result of maximizing the scan statistic over one window. best_cut is the
// last bin of the left block at the maximum (ties broken to the smallest
// cut); the boundary it implies starts at best_cut + 1.
struct ScanResult {
    int32_t lo = 0;
    int32_t hi = 0;
    int32_t first_cut = 0; // smallest admissible cut (profile index 0)
    int32_t best_cut = 0;
    double z_tilde = 0.0;
    double sigma0_sq = 0.0;
    std::vector<double> z_profile; // z per admissible cut, empty unless requested

    int32_t boundary_pos() const { return best_cut + 1; }
};

struct NbParams {
    double r = 1.0;  // dispersion (gamma shape of the mixing rate)
    double mu = 1.0; // mean
};

// Scan statistic at a fixed cut m (left block [lo..m], right block
// [m+1..hi]): the two-contrast quadratic form scaled by 1/(2*sigma0_sq).
double z_stat(const RegionSums& sums, int32_t m, double sigma0_sq);

// Equivalent Gaussian log-likelihood-ratio form
// (S1^2/|A1| + S2^2/|A2| + SR^2/|R| - SA^2/|A|) / (2*sigma0_sq);
// algebraically identical to z_stat, kept as the cross-check route.
double z_stat_gaussian_form(const RegionSums& sums, int32_t m, double sigma0_sq);

// Pooled sample variance of all window cells (zeros included), floored at a
// small positive constant so constant windows stay usable.
double estimate_sigma0(const ContactMatrix& m, int32_t lo, int32_t hi);
double estimate_sigma0(const RegionSums& sums);

inline constexpr double kSigma0Floor = 1e-8;

// Exact negative-binomial log-GLR at cut m with dispersion r; S*log(S/...)
// terms take the S->0 limit of zero.
double glr_nb(const RegionSums& sums, int32_t m, double r);

// Number of admissible cuts in a window of t bins with minimum block size xi.
inline int64_t admissible_cuts(int64_t t, int32_t xi) {
    return t - 2 * static_cast<int64_t>(xi) + 1;
}

// Maximize z over all cuts keeping both blocks >= xi bins. sigma0_sq is
// re-estimated on the window unless supplied. Throws if the window has no
// admissible cut (size < 2*xi).
ScanResult scan_window(const ContactMatrix& m, int32_t lo, int32_t hi, int32_t xi,
                       bool keep_profile = false,
                       std::optional<double> sigma0_sq = std::nullopt);
ScanResult scan_window(const RegionSums& sums, int32_t xi, bool keep_profile = false,
                       std::optional<double> sigma0_sq = std::nullopt);

// Default minimum TAD size: 100 kb expressed in bins, rounded up.
int32_t default_min_tad_bins(int64_t resolution);

} // namespace tadscan
