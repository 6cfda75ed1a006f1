#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tadscan/contact_matrix.hpp"
#include "tadscan/null_model.hpp"

namespace tadscan {

// A candidate boundary. `position` is the first bin of the block the
// boundary opens (the cut between bins position-1 and position).
struct ChangePoint {
    int32_t position = 0;
    int32_t discovery_order = 0;
    double z_value = 0.0;
    double p_value = 1.0;
    int32_t layer = 0; // merge depth, filled in by the hierarchy builder
};

struct SegmentStats {
    int64_t windows_scanned = 0;
    int64_t cells_visited = 0; // sum of scanned window triangle sizes
};

// Recursive top-down segmentation: scan a block, record the argmax split,
// recurse into both halves until blocks drop below 2*xi bins. Candidates are
// exhaustive by design; pruning does the rejection. `first_split` forces the
// first recorded boundary (robustness hook). Returns candidates sorted by
// position with discovery orders; empty when n < 2*xi.
std::vector<ChangePoint> binary_segment(const ContactMatrix& m, int32_t xi,
                                        std::optional<int32_t> first_split = std::nullopt,
                                        SegmentStats* stats = nullptr);

// Reverse-discovery-order pruning: each candidate is re-tested on the window
// spanning its two current neighbours (chromosome ends as sentinels) and
// dropped immediately when p > alpha0, which widens later windows. Survivors
// keep their final p-values.
std::vector<ChangePoint> prune(const ContactMatrix& m, std::vector<ChangePoint> candidates,
                               int32_t xi, double alpha0, NullTableProvider& null);

} // namespace tadscan
