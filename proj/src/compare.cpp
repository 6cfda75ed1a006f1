#include "tadscan/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tadscan {

std::string to_string(MatchClass c) {
    switch (c) {
        case MatchClass::conserved: return "conserved";
        case MatchClass::changed_in_a: return "changed_in_a";
        case MatchClass::changed_in_b: return "changed_in_b";
        case MatchClass::matched_weak: return "matched_weak";
    }
    return "?";
}

double fisher_combine(double p1, double p2) {
    if (!(p1 > 0.0) || p1 > 1.0 || !(p2 > 0.0) || p2 > 1.0)
        throw std::invalid_argument("fisher_combine: p-values must lie in (0, 1]");
    const double x = -2.0 * (std::log(p1) + std::log(p2));
    return std::exp(-x / 2.0) * (1.0 + x / 2.0);
}

std::vector<BoundaryMatch> match_and_classify(std::vector<BoundaryCall> a,
                                              std::vector<BoundaryCall> b, int32_t tol_bins,
                                              double conserved_alpha) {
    if (tol_bins < 0) throw std::invalid_argument("match_and_classify: tol_bins must be >= 0");
    std::sort(a.begin(), a.end(), [](auto& x, auto& y) { return x.position < y.position; });
    std::sort(b.begin(), b.end(), [](auto& x, auto& y) { return x.position < y.position; });

    struct Cand {
        int32_t dist;
        size_t ia, ib;
    };
    std::vector<Cand> cands;
    size_t jlo = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        while (jlo < b.size() && b[jlo].position < a[i].position - tol_bins) ++jlo;
        for (size_t j = jlo; j < b.size() && b[j].position <= a[i].position + tol_bins; ++j) {
            cands.push_back({std::abs(a[i].position - b[j].position), i, j});
        }
    }
    std::sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) {
        if (x.dist != y.dist) return x.dist < y.dist;
        if (a[x.ia].position != a[y.ia].position) return a[x.ia].position < a[y.ia].position;
        return b[x.ib].position < b[y.ib].position;
    });

    std::vector<int64_t> match_a(a.size(), -1), match_b(b.size(), -1);
    for (const auto& c : cands) {
        if (match_a[c.ia] >= 0 || match_b[c.ib] >= 0) continue;
        match_a[c.ia] = static_cast<int64_t>(c.ib);
        match_b[c.ib] = static_cast<int64_t>(c.ia);
    }

    std::vector<BoundaryMatch> out;
    size_t j = 0;
    const auto emit_b = [&](size_t jb) {
        BoundaryMatch m;
        m.pos_b = b[jb].position;
        m.p_b = b[jb].p_value;
        m.classification = MatchClass::changed_in_b;
        out.push_back(m);
    };
    for (size_t i = 0; i < a.size(); ++i) {
        while (j < b.size() && b[j].position < a[i].position) {
            if (match_b[j] < 0) emit_b(j);
            ++j;
        }
        BoundaryMatch m;
        m.pos_a = a[i].position;
        m.p_a = a[i].p_value;
        if (match_a[i] >= 0) {
            const auto& bb = b[static_cast<size_t>(match_a[i])];
            m.pos_b = bb.position;
            m.p_b = bb.p_value;
            m.p_fisher = fisher_combine(m.p_a, m.p_b);
            m.classification =
                *m.p_fisher < conserved_alpha ? MatchClass::conserved : MatchClass::matched_weak;
        } else {
            m.classification = MatchClass::changed_in_a;
        }
        out.push_back(m);
    }
    for (; j < b.size(); ++j) {
        if (match_b[j] < 0) emit_b(j);
    }
    return out;
}

} // namespace tadscan
