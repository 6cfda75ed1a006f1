#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace tadscan {

struct BoundaryScore {
    double tpr = 0.0;
    double fdr = 0.0;
    int64_t k_diff = 0;
};

// Greedy nearest matching within tol_bins, each boundary credited once.
// tpr = matched truths / |truth|; fdr = unmatched detected / |detected|
// (0 when nothing was detected); k_diff = |detected| - |truth|.
BoundaryScore score_boundaries(std::vector<int32_t> detected, std::vector<int32_t> truth,
                               int32_t tol_bins);

// Pair-counting index between two labelings of the same universe:
// M / sqrt(P*Q) with M = sum n_ij^2 - n, P = sum n_i.^2 - n, Q = sum n_.j^2 - n.
double fowlkes_mallows(const std::vector<int32_t>& labels_a, const std::vector<int32_t>& labels_b);

// Chance level: mean index after randomly permuting the first labeling.
// seed 0 is reserved as the identity shuffle (testing hook).
double relabel_control(const std::vector<int32_t>& labels, const std::vector<int32_t>& reference,
                       int32_t trials, uint64_t seed);

// Analytic expectation of the index under random relabeling.
double fowlkes_mallows_chance(const std::vector<int32_t>& labels_a,
                              const std::vector<int32_t>& labels_b);

struct Scorecard {
    double tpr = 0.0;
    double fdr = 0.0;
    int64_t k_diff = 0;
    std::map<int32_t, double> b_k;
    std::map<int32_t, double> b_k_control;
};

} // namespace tadscan
