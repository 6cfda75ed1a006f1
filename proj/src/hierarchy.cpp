#include "tadscan/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>

#include "tadscan/glr.hpp"

namespace tadscan {

namespace {

struct Seg {
    int32_t start, end;
    int32_t node;
    int32_t height = 0; // merge depth of the deepest boundary inside
    int32_t prev_b = -1, next_b = -1;
    bool merged_this_pass = false;
    bool alive = true;
};

struct Bound {
    int32_t cp = 0; // index into the boundary vector
    int32_t left_seg = 0, right_seg = 0;
    double p = 1.0;
    bool alive = true;
    bool stale = true;
};

void assign_orders(TadTree& tree, int32_t node, int32_t order) {
    tree.nodes[node].order = order;
    for (int32_t c : tree.nodes[node].children) assign_orders(tree, c, order + 1);
}

} // namespace

TadTree build_hierarchy(const ContactMatrix& m, const std::vector<ChangePoint>& boundaries,
                        int32_t xi, double alpha1, NullTableProvider& null) {
    if (!(alpha1 > 0.0 && alpha1 < 1.0))
        throw std::invalid_argument("build_hierarchy: alpha1 must be in (0,1)");
    const int32_t n = m.n();
    TadTree tree;
    tree.n = n;
    tree.boundaries = boundaries;
    for (auto& b : tree.boundaries) b.layer = 0;
    std::sort(tree.boundaries.begin(), tree.boundaries.end(),
              [](const ChangePoint& a, const ChangePoint& b) { return a.position < b.position; });

    const int32_t k = static_cast<int32_t>(tree.boundaries.size());
    std::vector<Seg> segs;
    std::vector<Bound> bounds(k);
    for (int32_t i = 0; i <= k; ++i) {
        Seg s;
        s.start = i == 0 ? 1 : tree.boundaries[i - 1].position;
        s.end = i == k ? n : tree.boundaries[i].position - 1;
        if (s.start > s.end) throw std::invalid_argument("build_hierarchy: boundary outside (1, n)");
        s.node = static_cast<int32_t>(tree.nodes.size());
        s.prev_b = i - 1;
        s.next_b = i < k ? i : -1;
        tree.nodes.push_back({s.start, s.end, 0, {}});
        segs.push_back(s);
    }
    for (int32_t i = 0; i < k; ++i) {
        bounds[i].cp = i;
        bounds[i].left_seg = i;
        bounds[i].right_seg = i + 1;
    }

    const auto recompute = [&](Bound& b) {
        const Seg& l = segs[b.left_seg];
        const Seg& r = segs[b.right_seg];
        const RegionSums sums(m, l.start, r.end);
        const double z = z_stat(sums, tree.boundaries[b.cp].position - 1, estimate_sigma0(sums));
        b.p = null.table_for_window(xi, r.end - l.start + 1).p_value(z);
        b.stale = false;
    };

    for (;;) {
        std::vector<int32_t> mergeable;
        for (int32_t i = 0; i < k; ++i) {
            if (!bounds[i].alive) continue;
            if (bounds[i].stale) recompute(bounds[i]);
            if (bounds[i].p > alpha1) mergeable.push_back(i);
        }
        if (mergeable.empty()) break;
        std::sort(mergeable.begin(), mergeable.end(), [&](int32_t a, int32_t b) {
            if (bounds[a].p != bounds[b].p) return bounds[a].p > bounds[b].p;
            return tree.boundaries[bounds[a].cp].position < tree.boundaries[bounds[b].cp].position;
        });
        for (auto& s : segs) s.merged_this_pass = false;

        for (int32_t bi : mergeable) {
            Bound& b = bounds[bi];
            if (!b.alive) continue;
            Seg& l = segs[b.left_seg];
            Seg& r = segs[b.right_seg];
            if (l.merged_this_pass || r.merged_this_pass) continue;

            const int32_t layer = 1 + std::max(l.height, r.height);
            tree.boundaries[b.cp].layer = layer;

            const int32_t parent = static_cast<int32_t>(tree.nodes.size());
            tree.nodes.push_back({l.start, r.end, 0, {l.node, r.node}});

            // fold the pair into the left segment's slot
            l.end = r.end;
            l.node = parent;
            l.height = layer;
            l.next_b = r.next_b;
            l.merged_this_pass = true;
            r.alive = false;
            b.alive = false;
            if (l.prev_b >= 0) {
                bounds[l.prev_b].right_seg = b.left_seg;
                bounds[l.prev_b].stale = true;
            }
            if (l.next_b >= 0) {
                bounds[l.next_b].left_seg = b.left_seg;
                bounds[l.next_b].stale = true;
            }
        }
    }

    for (const auto& s : segs) {
        if (s.alive) tree.roots.push_back(s.node);
    }
    for (int32_t root : tree.roots) assign_orders(tree, root, 1);
    return tree;
}

std::map<int32_t, int64_t> order_distribution(const TadTree& tree) {
    std::map<int32_t, int64_t> out;
    for (const auto& node : tree.nodes) ++out[node.order];
    return out;
}

std::vector<int32_t> partition_at_order(const TadTree& tree, int32_t order) {
    if (order < 1) throw std::invalid_argument("partition_at_order: order must be >= 1");
    std::vector<int32_t> labels(tree.n, -1);
    int32_t next_label = 0;
    // iterative DFS; cut at the requested order or at leaves above it
    std::vector<int32_t> stack(tree.roots.rbegin(), tree.roots.rend());
    while (!stack.empty()) {
        const int32_t id = stack.back();
        stack.pop_back();
        const TadNode& node = tree.nodes[id];
        if (node.order == order || node.children.empty()) {
            const int32_t lab = next_label++;
            for (int32_t bin = node.start; bin <= node.end; ++bin) labels[bin - 1] = lab;
        } else {
            for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
                stack.push_back(*it);
            }
        }
    }
    return labels;
}

TadTree tree_from_levels(int32_t n, const std::vector<int32_t>& positions,
                         const std::vector<int32_t>& levels) {
    if (positions.size() != levels.size())
        throw std::invalid_argument("tree_from_levels: positions/levels size mismatch");
    TadTree tree;
    tree.n = n;
    struct Item {
        int32_t pos, level;
    };
    std::vector<Item> items;
    for (size_t i = 0; i < positions.size(); ++i) items.push_back({positions[i], levels[i]});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.pos < b.pos; });

    // recursively split [start, end] at the boundaries of the given level
    auto build = [&](auto&& self, int32_t start, int32_t end, size_t ib, size_t ie,
                     int32_t level) -> int32_t {
        const int32_t id = static_cast<int32_t>(tree.nodes.size());
        tree.nodes.push_back({start, end, level, {}});
        std::vector<std::pair<int32_t, std::pair<size_t, size_t>>> parts;
        int32_t cur = start;
        size_t seg_begin = ib;
        for (size_t i = ib; i < ie; ++i) {
            if (items[i].level == level + 1) {
                parts.push_back({cur, {seg_begin, i}});
                cur = items[i].pos;
                seg_begin = i + 1;
            }
        }
        if (cur == start) return id; // no splits at this level
        parts.push_back({cur, {seg_begin, ie}});
        for (size_t pi = 0; pi < parts.size(); ++pi) {
            const int32_t pstart = parts[pi].first;
            const int32_t pend = pi + 1 < parts.size() ? parts[pi + 1].first - 1 : end;
            const int32_t child =
                self(self, pstart, pend, parts[pi].second.first, parts[pi].second.second, level + 1);
            tree.nodes[id].children.push_back(child);
        }
        return id;
    };

    // level-1 boundaries split the chromosome into roots
    std::vector<std::pair<int32_t, std::pair<size_t, size_t>>> tops;
    int32_t cur = 1;
    size_t seg_begin = 0;
    for (size_t i = 0; i < items.size(); ++i) {
        if (items[i].level == 1) {
            tops.push_back({cur, {seg_begin, i}});
            cur = items[i].pos;
            seg_begin = i + 1;
        }
    }
    tops.push_back({cur, {seg_begin, items.size()}});
    for (size_t pi = 0; pi < tops.size(); ++pi) {
        const int32_t pstart = tops[pi].first;
        const int32_t pend = pi + 1 < tops.size() ? tops[pi + 1].first - 1 : n;
        tree.roots.push_back(build(build, pstart, pend, tops[pi].second.first,
                                   tops[pi].second.second, 1));
    }
    return tree;
}

} // namespace tadscan
