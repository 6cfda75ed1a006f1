#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tadscan/contact_matrix.hpp"

namespace tadscan {

struct GroundTruth {
    ContactMatrix matrix;
    std::vector<int32_t> boundaries; // positions, first bin of the opened block
    std::vector<int32_t> levels;     // hierarchy level per boundary (1 = outermost)
    std::string design;
    double sqrt_nu = 0.0;
    uint64_t seed = 0;
};

// Gaussian blocks: boundary locations uniform with every block > 4 bins,
// block means ~ Gamma(shape 4, scale 18), cell sd^2 = 72 + 72^2 * nu, and
// background max{N(0, sd^2), 0}. Values are clamped at zero (counts).
GroundTruth gen_gaussian(int32_t n, int32_t k, double sqrt_nu, uint64_t seed,
                         int64_t resolution = 40000);

// Count blocks: within-block NB with mean mu_k and variance mu_k + nu*mu_k^2
// (Poisson when nu = 0); background is a half-and-half mix of zeros and NB
// draws at the weakest block mean.
GroundTruth gen_nb(int32_t n, int32_t k, double sqrt_nu, uint64_t seed,
                   int64_t resolution = 40000);

// Nested three-level design for hierarchy scoring. Top blocks sit far above
// background; a random subset splits into two children, and one child of a
// subset of those splits again. Increments are additive (inner blocks are
// strictly stronger) and sized so the inner boundaries are significant at
// the pruning threshold yet weak enough to merge during the bottom-up pass.
struct NestedConfig {
    int32_t n = 504;
    int32_t top_blocks = 24;
    int32_t levels = 3;
    double sqrt_nu = 0.04;
    uint64_t seed = 1;
    int64_t resolution = 40000;
    double background_mean = 4.0;
    double base_mean = 28.0;
    double child_step_solo = 3.8;   // level-2 increment when the child stays whole
    double child_step_nested = 1.0; // level-2 increment above a deeper split
    double leaf_step = 8.5;         // level-3 increment
    double split2_prob = 0.65;
    double split3_prob = 0.6;
};
GroundTruth gen_nested(const NestedConfig& cfg);

// Sidecar truth file: "# columns: boundary_bin level" rows.
void write_truth(const GroundTruth& truth, const std::string& path);
void read_truth(const std::string& path, std::vector<int32_t>& positions,
                std::vector<int32_t>& levels);

} // namespace tadscan
