#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace tadscan {

// Empirical distribution of the max scan statistic over the Gaussian-field
// null, keyed by delta = (minimum block size) / (window size).
struct NullTable {
    double delta = 0.0;
    int32_t grid_n = 0;
    int64_t replicates = 0;
    uint64_t seed = 0;
    std::vector<double> sorted_samples; // ascending

    // Empirical survival with add-one smoothing; never returns 0.
    double p_value(double z) const;
    double quantile(double prob) const; // prob in [0,1]
};

// Deltas the provider snaps to. Anchored at 0.025 (the simulated reference
// ratio) with neighbors covering the window sizes seen in practice.
inline constexpr double kDeltaGrid[] = {0.01, 0.02, 0.025, 0.05, 0.1};
double snap_delta(double delta);

// One replicate: fill the upper triangle of a grid with independent normals
// whose variance equals the cell area (half area on the diagonal, matching
// the field's boundary condition), evaluate the scan statistic with
// sigma0^2 = 1 over cuts keeping both sides >= delta*grid_n, record the max.
NullTable simulate_null(double delta, int32_t grid_n, int64_t replicates, uint64_t seed,
                        int threads = 1);

// Same replicates scored at several deltas at once (the cell draws dominate,
// the per-delta max is nearly free). Output order matches `deltas`.
std::vector<NullTable> simulate_null_grid(const std::vector<double>& deltas, int32_t grid_n,
                                          int64_t replicates, uint64_t seed, int threads = 1);

// One draw of the null max statistic (used by the calibration checks).
double simulate_null_draw(double delta, int32_t grid_n, uint64_t seed, uint64_t stream);

std::string cache_key(double delta, int32_t grid_n, int64_t replicates, uint64_t seed);
void store_null_table(const NullTable& table, const std::string& dir);
bool load_null_table(NullTable& table, const std::string& dir); // false if absent/corrupt

// Lazily builds (or loads) snapped-delta tables. Immutable tables, one
// simulation pass fills the whole delta grid.
class NullTableProvider {
public:
    struct Config {
        int32_t grid_n = 400;
        int64_t replicates = 100000;
        uint64_t seed = 1;
        int threads = 1;
        std::string cache_dir; // empty -> no disk cache
    };

    explicit NullTableProvider(Config cfg) : cfg_(cfg) {}

    // Table for a window of `window_bins` bins scanned with minimum block
    // size xi: delta = xi / window_bins snapped to the grid.
    const NullTable& table_for_window(int32_t xi, int64_t window_bins);
    const NullTable& table_for_delta(double delta);

    const Config& config() const { return cfg_; }
    int simulations_run() const { return simulations_run_; }

private:
    Config cfg_;
    std::map<double, NullTable> tables_;
    std::mutex mu_;
    int simulations_run_ = 0;
};

} // namespace tadscan
