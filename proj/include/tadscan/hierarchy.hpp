#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tadscan/contact_matrix.hpp"
#include "tadscan/null_model.hpp"
#include "tadscan/segmenter.hpp"

namespace tadscan {

struct TadNode {
    int32_t start = 0; // bins, inclusive
    int32_t end = 0;
    int32_t order = 0; // roots are 1, children parent+1
    std::vector<int32_t> children;
};

struct TadTree {
    int32_t n = 0;
    std::vector<TadNode> nodes;
    std::vector<int32_t> roots;               // ordered left to right
    std::vector<ChangePoint> boundaries;      // surviving boundaries with final layers
};

// Bottom-up merging. Every boundary's p-value is recomputed from its two
// flanking blocks plus the attached rectangle; per pass, boundaries are
// taken in descending-p order and a pair of neighbours merges when the inner
// p exceeds alpha1 and neither block merged earlier in the same pass. The
// consumed boundary's layer records the merge depth (1 + deepest merged
// sub-block). Stops when every remaining boundary has p <= alpha1.
TadTree build_hierarchy(const ContactMatrix& m, const std::vector<ChangePoint>& boundaries,
                        int32_t xi, double alpha1, NullTableProvider& null);

// TAD counts per order; orders with no TADs are absent.
std::map<int32_t, int64_t> order_distribution(const TadTree& tree);

// Per-bin cluster labels after cutting the tree at `order`; leaves shallower
// than the cut keep their own (deepest available) cluster.
std::vector<int32_t> partition_at_order(const TadTree& tree, int32_t order);

// Tree from truth boundary positions and hierarchy levels (level 1 bounds
// split roots, level 2 their children, ...). Used when scoring simulations.
TadTree tree_from_levels(int32_t n, const std::vector<int32_t>& positions,
                         const std::vector<int32_t>& levels);

} // namespace tadscan
