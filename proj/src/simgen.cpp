#include "tadscan/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tadscan/rng.hpp"

namespace tadscan {

namespace {

// Uniform block sizes with every size >= min_size (stars-and-bars bijection).
std::vector<int32_t> draw_block_sizes(Rng& rng, int32_t n, int32_t blocks, int32_t min_size) {
    const int64_t free_units = static_cast<int64_t>(n) - static_cast<int64_t>(blocks) * min_size;
    if (free_units < 0) throw std::invalid_argument("simgen: too many blocks for n");
    const int32_t cuts = blocks - 1;
    std::set<int64_t> chosen;
    while (static_cast<int32_t>(chosen.size()) < cuts) {
        chosen.insert(rng.uniform_int(1, free_units + cuts));
    }
    std::vector<int32_t> sizes;
    int64_t prev = 0;
    for (int64_t c : chosen) {
        sizes.push_back(static_cast<int32_t>(min_size + (c - prev - 1)));
        prev = c;
    }
    sizes.push_back(static_cast<int32_t>(min_size + (free_units + cuts - prev)));
    return sizes;
}

std::vector<int32_t> boundaries_from_sizes(const std::vector<int32_t>& sizes) {
    std::vector<int32_t> out;
    int32_t pos = 1;
    for (size_t b = 0; b + 1 < sizes.size(); ++b) {
        pos += sizes[b];
        out.push_back(pos);
    }
    return out;
}

std::vector<int32_t> block_of_bin(const std::vector<int32_t>& sizes, int32_t n) {
    std::vector<int32_t> blk(n + 1, 0);
    int32_t bin = 1;
    for (size_t b = 0; b < sizes.size(); ++b) {
        for (int32_t t = 0; t < sizes[b]; ++t) blk[bin++] = static_cast<int32_t>(b);
    }
    return blk;
}

} // namespace

GroundTruth gen_gaussian(int32_t n, int32_t k, double sqrt_nu, uint64_t seed,
                         int64_t resolution) {
    if (sqrt_nu < 0.0) throw std::invalid_argument("gen_gaussian: sqrt_nu must be >= 0");
    Rng rng = Rng::for_stream(seed, 0x5133);
    const auto sizes = draw_block_sizes(rng, n, k + 1, 5);
    const auto blk = block_of_bin(sizes, n);
    std::vector<double> mu(sizes.size());
    for (auto& m : mu) m = rng.gamma(4.0, 18.0);

    const double nu = sqrt_nu * sqrt_nu;
    const double sd = std::sqrt(72.0 + 72.0 * 72.0 * nu);
    std::vector<Entry> entries;
    entries.reserve(static_cast<size_t>(n) * (n + 1) / 2);
    for (int32_t i = 1; i <= n; ++i) {
        for (int32_t j = i; j <= n; ++j) {
            const double mean = blk[i] == blk[j] ? mu[blk[i]] : 0.0;
            const double v = std::max(mean + sd * rng.normal(), 0.0);
            if (v != 0.0) entries.push_back({i, j, v});
        }
    }
    GroundTruth out{ContactMatrix(n, resolution, std::move(entries)), boundaries_from_sizes(sizes),
                    {}, "gaussian", sqrt_nu, seed};
    out.levels.assign(out.boundaries.size(), 1);
    return out;
}

GroundTruth gen_nb(int32_t n, int32_t k, double sqrt_nu, uint64_t seed, int64_t resolution) {
    if (sqrt_nu < 0.0) throw std::invalid_argument("gen_nb: sqrt_nu must be >= 0");
    Rng rng = Rng::for_stream(seed, 0x5134);
    const auto sizes = draw_block_sizes(rng, n, k + 1, 5);
    const auto blk = block_of_bin(sizes, n);
    std::vector<double> mu(sizes.size());
    for (auto& m : mu) m = rng.gamma(4.0, 18.0);
    const double mu_min = *std::min_element(mu.begin(), mu.end());

    const double nu = sqrt_nu * sqrt_nu;
    std::vector<Entry> entries;
    for (int32_t i = 1; i <= n; ++i) {
        for (int32_t j = i; j <= n; ++j) {
            double v;
            if (blk[i] == blk[j]) {
                v = static_cast<double>(rng.negative_binomial(mu[blk[i]], nu));
            } else {
                v = rng.uniform() < 0.5 ? 0.0
                                        : static_cast<double>(rng.negative_binomial(mu_min, nu));
            }
            if (v != 0.0) entries.push_back({i, j, v});
        }
    }
    GroundTruth out{ContactMatrix(n, resolution, std::move(entries)), boundaries_from_sizes(sizes),
                    {}, "nb", sqrt_nu, seed};
    out.levels.assign(out.boundaries.size(), 1);
    return out;
}

GroundTruth gen_nested(const NestedConfig& cfg) {
    if (cfg.levels < 2) throw std::invalid_argument("gen_nested: levels must be >= 2");
    if (cfg.top_blocks < 2) throw std::invalid_argument("gen_nested: need >= 2 top blocks");
    Rng rng = Rng::for_stream(cfg.seed, 0x5135);
    const int32_t n = cfg.n;

    // jittered top-level sizes
    const int32_t base = n / cfg.top_blocks;
    if (base < 4 * cfg.levels) throw std::invalid_argument("gen_nested: top blocks too small");
    std::vector<int32_t> sizes(cfg.top_blocks, base);
    int32_t slack = n - base * cfg.top_blocks;
    for (int32_t b = 0; b < cfg.top_blocks - 1 && slack != 0; ++b, --slack) ++sizes[b];
    for (int32_t b = 0; b < cfg.top_blocks - 1; ++b) {
        const int32_t j = static_cast<int32_t>(rng.uniform_int(-2, 2));
        if (sizes[b] + j >= 4 * cfg.levels && sizes[b + 1] - j >= 4 * cfg.levels) {
            sizes[b] += j;
            sizes[b + 1] -= j;
        }
    }

    // nested intervals, deepest-first lookup later
    struct Box {
        int32_t start, end;
        double mean;
        int32_t level;
    };
    std::vector<Box> boxes;
    std::vector<int32_t> bpos, blevel;
    int32_t start = 1;
    for (int32_t b = 0; b < cfg.top_blocks; ++b) {
        const int32_t end = start + sizes[b] - 1;
        boxes.push_back({start, end, cfg.base_mean, 1});
        if (b + 1 < cfg.top_blocks) {
            bpos.push_back(end + 1);
            blevel.push_back(1);
        }
        if (rng.uniform() < cfg.split2_prob) {
            const int32_t mid = start + sizes[b] / 2 + static_cast<int32_t>(rng.uniform_int(-1, 1));
            bpos.push_back(mid);
            blevel.push_back(2);
            const bool deeper = cfg.levels >= 3 && rng.uniform() < cfg.split3_prob;
            const double step = deeper ? cfg.child_step_nested : cfg.child_step_solo;
            boxes.push_back({start, mid - 1, cfg.base_mean + step, 2});
            boxes.push_back({mid, end, cfg.base_mean + step, 2});
            if (deeper) {
                // one child of the pair nests again
                const bool left = rng.uniform() < 0.5;
                const int32_t cs = left ? start : mid;
                const int32_t ce = left ? mid - 1 : end;
                const int32_t cmid = cs + (ce - cs + 1) / 2;
                bpos.push_back(cmid);
                blevel.push_back(3);
                const double leaf_mean = cfg.base_mean + step + cfg.leaf_step;
                boxes.push_back({cs, cmid - 1, leaf_mean, 3});
                boxes.push_back({cmid, ce, leaf_mean, 3});
            }
        }
        start = end + 1;
    }

    // deepest box containing both bins decides the cell mean
    std::vector<std::vector<int32_t>> boxes_of_bin(n + 1);
    for (size_t bi = 0; bi < boxes.size(); ++bi) {
        for (int32_t bin = boxes[bi].start; bin <= boxes[bi].end; ++bin) {
            boxes_of_bin[bin].push_back(static_cast<int32_t>(bi));
        }
    }
    const double nu = cfg.sqrt_nu * cfg.sqrt_nu;
    std::vector<Entry> entries;
    for (int32_t i = 1; i <= n; ++i) {
        for (int32_t j = i; j <= n; ++j) {
            double mean = -1.0;
            int32_t best_level = 0;
            for (int32_t bi : boxes_of_bin[i]) {
                const Box& box = boxes[bi];
                if (box.level > best_level && j <= box.end) {
                    best_level = box.level;
                    mean = box.mean;
                }
            }
            double v;
            if (best_level > 0) {
                v = static_cast<double>(rng.negative_binomial(mean, nu));
            } else {
                v = rng.uniform() < 0.5
                        ? 0.0
                        : static_cast<double>(rng.negative_binomial(cfg.background_mean, nu));
            }
            if (v != 0.0) entries.push_back({i, j, v});
        }
    }

    GroundTruth out{ContactMatrix(n, cfg.resolution, std::move(entries)), std::move(bpos),
                    std::move(blevel), "nested", cfg.sqrt_nu, cfg.seed};
    // keep boundaries sorted by position, levels aligned
    std::vector<size_t> idx(out.boundaries.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return out.boundaries[a] < out.boundaries[b]; });
    std::vector<int32_t> bp(idx.size()), lv(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        bp[i] = out.boundaries[idx[i]];
        lv[i] = out.levels[idx[i]];
    }
    out.boundaries = std::move(bp);
    out.levels = std::move(lv);
    return out;
}

void write_truth(const GroundTruth& truth, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "# columns: boundary_bin\tlevel\n";
    for (size_t i = 0; i < truth.boundaries.size(); ++i) {
        out << truth.boundaries[i] << '\t' << truth.levels[i] << '\n';
    }
}

void read_truth(const std::string& path, std::vector<int32_t>& positions,
                std::vector<int32_t>& levels) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    positions.clear();
    levels.clear();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        int32_t p, l;
        if (!(ss >> p >> l)) throw std::runtime_error(path + ": malformed truth line");
        positions.push_back(p);
        levels.push_back(l);
    }
}

} // namespace tadscan
