#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tadscan {

enum class MatchClass { conserved, changed_in_a, changed_in_b, matched_weak };

std::string to_string(MatchClass c);

struct BoundaryMatch {
    std::optional<int32_t> pos_a;
    std::optional<int32_t> pos_b;
    double p_a = 1.0;
    double p_b = 1.0;
    std::optional<double> p_fisher; // present iff both positions present
    MatchClass classification = MatchClass::conserved;
};

// Upper tail of chi-squared with 4 df at -2 ln(p1) - 2 ln(p2); closed form
// exp(-x/2) * (1 + x/2). Inputs must lie in (0, 1].
double fisher_combine(double p1, double p2);

struct BoundaryCall {
    int32_t position = 0;
    double p_value = 1.0;
};

// Greedy nearest-first matching within tol_bins, each boundary used at most
// once; distance ties go to the smaller a-position, then smaller b-position.
// Matched pairs with p_fisher < conserved_alpha are conserved, other matches
// matched_weak; unmatched boundaries are changed_in_a / changed_in_b.
std::vector<BoundaryMatch> match_and_classify(std::vector<BoundaryCall> a,
                                              std::vector<BoundaryCall> b, int32_t tol_bins,
                                              double conserved_alpha);

} // namespace tadscan
