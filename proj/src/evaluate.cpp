#include "tadscan/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "tadscan/rng.hpp"

namespace tadscan {

BoundaryScore score_boundaries(std::vector<int32_t> detected, std::vector<int32_t> truth,
                               int32_t tol_bins) {
    std::sort(detected.begin(), detected.end());
    std::sort(truth.begin(), truth.end());
    struct Cand {
        int32_t dist;
        size_t it, id;
    };
    std::vector<Cand> cands;
    size_t dlo = 0;
    for (size_t t = 0; t < truth.size(); ++t) {
        while (dlo < detected.size() && detected[dlo] < truth[t] - tol_bins) ++dlo;
        for (size_t d = dlo; d < detected.size() && detected[d] <= truth[t] + tol_bins; ++d) {
            cands.push_back({std::abs(detected[d] - truth[t]), t, d});
        }
    }
    std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.it != b.it) return a.it < b.it;
        return a.id < b.id;
    });
    std::vector<bool> used_t(truth.size(), false), used_d(detected.size(), false);
    int64_t matched = 0;
    for (const auto& c : cands) {
        if (used_t[c.it] || used_d[c.id]) continue;
        used_t[c.it] = used_d[c.id] = true;
        ++matched;
    }
    BoundaryScore s;
    s.tpr = truth.empty() ? 1.0 : static_cast<double>(matched) / static_cast<double>(truth.size());
    s.fdr = detected.empty() ? 0.0
                             : static_cast<double>(static_cast<int64_t>(detected.size()) - matched) /
                                   static_cast<double>(detected.size());
    s.k_diff = static_cast<int64_t>(detected.size()) - static_cast<int64_t>(truth.size());
    return s;
}

namespace {

struct PairCounts {
    double m = 0.0, p = 0.0, q = 0.0;
};

PairCounts pair_counts(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("fowlkes_mallows: partitions cover different universes");
    const double n = static_cast<double>(a.size());
    std::unordered_map<int64_t, int64_t> joint;
    std::unordered_map<int32_t, int64_t> ca, cb;
    for (size_t i = 0; i < a.size(); ++i) {
        ++joint[(static_cast<int64_t>(a[i]) << 32) ^ static_cast<uint32_t>(b[i])];
        ++ca[a[i]];
        ++cb[b[i]];
    }
    PairCounts out;
    for (const auto& [_, c] : joint) out.m += static_cast<double>(c) * c;
    for (const auto& [_, c] : ca) out.p += static_cast<double>(c) * c;
    for (const auto& [_, c] : cb) out.q += static_cast<double>(c) * c;
    out.m -= n;
    out.p -= n;
    out.q -= n;
    return out;
}

} // namespace

double fowlkes_mallows(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    const PairCounts c = pair_counts(a, b);
    if (c.p <= 0.0 && c.q <= 0.0) return 1.0; // two all-singleton partitions agree
    if (c.p <= 0.0 || c.q <= 0.0) return 0.0;
    return c.m / std::sqrt(c.p * c.q);
}

double fowlkes_mallows_chance(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    const PairCounts c = pair_counts(a, b);
    if (c.p <= 0.0 || c.q <= 0.0) return 0.0;
    const double n = static_cast<double>(a.size());
    return std::sqrt(c.p * c.q) / (n * (n - 1.0));
}

double relabel_control(const std::vector<int32_t>& labels, const std::vector<int32_t>& reference,
                       int32_t trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("relabel_control: trials must be >= 1");
    std::vector<int32_t> shuffled = labels;
    double acc = 0.0;
    for (int32_t t = 0; t < trials; ++t) {
        if (seed != 0) {
            Rng rng = Rng::for_stream(seed, static_cast<uint64_t>(t));
            for (size_t i = shuffled.size(); i > 1; --i) {
                const size_t j = static_cast<size_t>(rng.uniform_below(i));
                std::swap(shuffled[i - 1], shuffled[j]);
            }
        }
        acc += fowlkes_mallows(shuffled, reference);
    }
    return acc / trials;
}

} // namespace tadscan
