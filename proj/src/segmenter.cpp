#include "tadscan/segmenter.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tadscan/glr.hpp"

namespace tadscan {

namespace {

void segment_block(const ContactMatrix& m, int32_t lo, int32_t hi, int32_t xi,
                   std::vector<ChangePoint>& out, int32_t& order, SegmentStats* stats) {
    const int64_t t = hi - lo + 1;
    if (t < 2 * static_cast<int64_t>(xi)) return;
    const ScanResult res = scan_window(m, lo, hi, xi);
    if (stats) {
        ++stats->windows_scanned;
        stats->cells_visited += t * (t + 1) / 2;
    }
    ChangePoint cp;
    cp.position = res.boundary_pos();
    cp.discovery_order = ++order;
    cp.z_value = res.z_tilde;
    out.push_back(cp);
    segment_block(m, lo, cp.position - 1, xi, out, order, stats);
    segment_block(m, cp.position, hi, xi, out, order, stats);
}

} // namespace

std::vector<ChangePoint> binary_segment(const ContactMatrix& m, int32_t xi,
                                        std::optional<int32_t> first_split, SegmentStats* stats) {
    if (xi < 1) throw std::invalid_argument("binary_segment: xi must be >= 1");
    std::vector<ChangePoint> out;
    const int32_t n = m.n();
    if (static_cast<int64_t>(n) < 2 * static_cast<int64_t>(xi)) return out;
    int32_t order = 0;
    if (first_split) {
        const int32_t p = *first_split;
        if (p < 1 + xi || p > n - xi + 1)
            throw std::invalid_argument("binary_segment: forced first split not admissible");
        const RegionSums sums(m, 1, n);
        ChangePoint cp;
        cp.position = p;
        cp.discovery_order = ++order;
        cp.z_value = z_stat(sums, p - 1, estimate_sigma0(sums));
        out.push_back(cp);
        segment_block(m, 1, p - 1, xi, out, order, stats);
        segment_block(m, p, n, xi, out, order, stats);
    } else {
        segment_block(m, 1, n, xi, out, order, stats);
    }
    std::sort(out.begin(), out.end(),
              [](const ChangePoint& a, const ChangePoint& b) { return a.position < b.position; });
    return out;
}

std::vector<ChangePoint> prune(const ContactMatrix& m, std::vector<ChangePoint> candidates,
                               int32_t xi, double alpha0, NullTableProvider& null) {
    if (candidates.empty()) return candidates;
    if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw std::invalid_argument("prune: alpha0 must be in (0,1)");
    const int32_t k = static_cast<int32_t>(candidates.size());
    const int32_t n = m.n();

    // neighbour links over the position-sorted list; index -1/k are sentinels
    std::vector<int32_t> prev(k), next(k);
    std::vector<bool> alive(k, true);
    for (int32_t i = 0; i < k; ++i) {
        prev[i] = i - 1;
        next[i] = i + 1;
    }

    // Reverse-discovery sweep with immediate removal. A removal re-queues the
    // two surviving neighbours (their windows widened), so every survivor's
    // final p-value is valid against its final neighbours and a second prune
    // is a no-op.
    std::set<std::pair<int32_t, int32_t>> queue; // (-discovery_order, index)
    for (int32_t i = 0; i < k; ++i) queue.insert({-candidates[i].discovery_order, i});
    while (!queue.empty()) {
        const int32_t idx = queue.begin()->second;
        queue.erase(queue.begin());
        ChangePoint& cp = candidates[idx];
        const int32_t lo = prev[idx] >= 0 ? candidates[prev[idx]].position : 1;
        const int32_t hi = next[idx] < k ? candidates[next[idx]].position - 1 : n;
        const RegionSums sums(m, lo, hi);
        const double z = z_stat(sums, cp.position - 1, estimate_sigma0(sums));
        const NullTable& table = null.table_for_window(xi, hi - lo + 1);
        const double p = table.p_value(z);
        if (p > alpha0) {
            alive[idx] = false;
            if (prev[idx] >= 0) next[prev[idx]] = next[idx];
            if (next[idx] < k) prev[next[idx]] = prev[idx];
            if (prev[idx] >= 0) queue.insert({-candidates[prev[idx]].discovery_order, prev[idx]});
            if (next[idx] < k) queue.insert({-candidates[next[idx]].discovery_order, next[idx]});
        } else {
            cp.z_value = z;
            cp.p_value = p;
        }
    }

    std::vector<ChangePoint> out;
    for (int32_t i = 0; i < k; ++i) {
        if (alive[i]) out.push_back(candidates[i]);
    }
    return out;
}

} // namespace tadscan
