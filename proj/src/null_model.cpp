#include "tadscan/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tadscan/kernels.hpp"
#include "tadscan/rng.hpp"

namespace tadscan {

double NullTable::p_value(double z) const {
    if (sorted_samples.empty()) throw std::logic_error("NullTable::p_value: empty table");
    const auto it = std::lower_bound(sorted_samples.begin(), sorted_samples.end(), z);
    const int64_t at_least = static_cast<int64_t>(sorted_samples.end() - it);
    return static_cast<double>(1 + at_least) / static_cast<double>(replicates + 1);
}

double NullTable::quantile(double prob) const {
    if (sorted_samples.empty()) throw std::logic_error("NullTable::quantile: empty table");
    prob = std::min(std::max(prob, 0.0), 1.0);
    const size_t idx = std::min(sorted_samples.size() - 1,
                                static_cast<size_t>(prob * static_cast<double>(sorted_samples.size())));
    return sorted_samples[idx];
}

double snap_delta(double delta) {
    double best = kDeltaGrid[0];
    double best_err = std::fabs(delta - best);
    for (double d : kDeltaGrid) {
        const double err = std::fabs(delta - d);
        if (err < best_err) {
            best = d;
            best_err = err;
        }
    }
    return best;
}

namespace {

struct DeltaRange {
    int32_t xi_grid;     // minimum block size on the grid
    int64_t cut_lo;      // admissible cut range (left block size a = cut)
    int64_t cut_hi;
};

DeltaRange range_for(double delta, int32_t grid_n) {
    const int32_t xi = std::max<int32_t>(1, static_cast<int32_t>(std::lround(delta * grid_n)));
    return {xi, xi, grid_n - xi};
}

// z profile of one simulated field replicate, sigma0^2 = 1, continuum region
// measures (|A1| = a^2/2 etc., consistent with the cell-area variances).
void replicate_profile(int32_t g, Rng& rng, std::vector<double>& buf, std::vector<double>& r,
                       std::vector<double>& c, std::vector<double>& u, std::vector<double>& v,
                       std::vector<double>& w1, std::vector<double>& w2, std::vector<double>& z) {
    r.assign(g, 0.0);
    c.assign(g, 0.0);
    buf.resize(g);
    const double inv_sqrt2 = 0.70710678118654752440;
    for (int32_t j = 0; j < g; ++j) {
        for (int32_t i = 0; i < j; ++i) buf[i] = rng.normal();
        c[j] = kernels::reduce_sum(buf.data(), j);
        kernels::vec_add(r.data(), buf.data(), j);
        const double d = rng.normal() * inv_sqrt2; // diagonal cell, half area
        c[j] += d;
        r[j] += d;
    }
    u.resize(g - 1);
    v.resize(g - 1);
    w1.resize(g - 1);
    w2.resize(g - 1);
    z.resize(g - 1);
    double uacc = 0.0, vacc = 0.0, sall = 0.0;
    for (int32_t j = 0; j < g; ++j) sall += c[j];
    for (int32_t a = 1; a <= g - 1; ++a) {
        uacc += c[a - 1];
        vacc += r[a - 1];
        u[a - 1] = uacc;
        v[a - 1] = vacc;
        const double ad = static_cast<double>(a);
        w1[a - 1] = ad * ad / 2.0;
        w2[a - 1] = w1[a - 1] + ad * static_cast<double>(g - a);
    }
    kernels::ZProfileIn in{u.data(), v.data(), w1.data(), w2.data(),
                           static_cast<double>(g) * g / 2.0, sall, 0.5};
    kernels::z_profile(in, z.data(), static_cast<size_t>(g - 1));
}

} // namespace

std::vector<NullTable> simulate_null_grid(const std::vector<double>& deltas, int32_t grid_n,
                                          int64_t replicates, uint64_t seed, int threads) {
    if (grid_n < 50) throw std::invalid_argument("simulate_null: grid_n must be >= 50");
    if (replicates < 1000) throw std::invalid_argument("simulate_null: replicates must be >= 1000");
    std::vector<DeltaRange> ranges;
    for (double d : deltas) {
        if (!(d > 0.0 && d < 0.5)) throw std::invalid_argument("simulate_null: delta must be in (0, 0.5)");
        ranges.push_back(range_for(d, grid_n));
    }

    std::vector<std::vector<double>> draws(deltas.size(), std::vector<double>(replicates));
    threads = std::max(1, threads);
    auto worker = [&](int64_t rep_lo, int64_t rep_hi) {
        std::vector<double> buf, r, c, u, v, w1, w2, z;
        for (int64_t rep = rep_lo; rep < rep_hi; ++rep) {
            Rng rng = Rng::for_stream(seed, static_cast<uint64_t>(rep));
            replicate_profile(grid_n, rng, buf, r, c, u, v, w1, w2, z);
            for (size_t di = 0; di < ranges.size(); ++di) {
                double best = 0.0;
                for (int64_t a = ranges[di].cut_lo; a <= ranges[di].cut_hi; ++a) {
                    best = std::max(best, z[a - 1]);
                }
                draws[di][rep] = best;
            }
        }
    };
    if (threads == 1) {
        worker(0, replicates);
    } else {
        std::vector<std::thread> pool;
        const int64_t chunk = (replicates + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int64_t lo = t * chunk;
            const int64_t hi = std::min<int64_t>(replicates, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<NullTable> out;
    for (size_t di = 0; di < deltas.size(); ++di) {
        NullTable t;
        t.delta = deltas[di];
        t.grid_n = grid_n;
        t.replicates = replicates;
        t.seed = seed;
        t.sorted_samples = std::move(draws[di]);
        std::sort(t.sorted_samples.begin(), t.sorted_samples.end());
        out.push_back(std::move(t));
    }
    return out;
}

NullTable simulate_null(double delta, int32_t grid_n, int64_t replicates, uint64_t seed,
                        int threads) {
    return std::move(simulate_null_grid({delta}, grid_n, replicates, seed, threads)[0]);
}

double simulate_null_draw(double delta, int32_t grid_n, uint64_t seed, uint64_t stream) {
    const DeltaRange dr = range_for(delta, grid_n);
    Rng rng = Rng::for_stream(seed, stream);
    std::vector<double> buf, r, c, u, v, w1, w2, z;
    replicate_profile(grid_n, rng, buf, r, c, u, v, w1, w2, z);
    double best = 0.0;
    for (int64_t a = dr.cut_lo; a <= dr.cut_hi; ++a) best = std::max(best, z[a - 1]);
    return best;
}

std::string cache_key(double delta, int32_t grid_n, int64_t replicates, uint64_t seed) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "null_d%g_g%d_r%lld_s%llu", delta, grid_n,
                  static_cast<long long>(replicates), static_cast<unsigned long long>(seed));
    return buf;
}

void store_null_table(const NullTable& table, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::string path =
        dir + "/" + cache_key(table.delta, table.grid_n, table.replicates, table.seed) + ".tsv";
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write null cache " + tmp);
        char buf[64];
        out << "# null-table v1\n";
        std::snprintf(buf, sizeof(buf), "%.17g", table.delta);
        out << "delta\t" << buf << "\n";
        out << "grid\t" << table.grid_n << "\n";
        out << "replicates\t" << table.replicates << "\n";
        out << "seed\t" << table.seed << "\n";
        for (double s : table.sorted_samples) {
            std::snprintf(buf, sizeof(buf), "%a", s); // hexfloat: bit-exact round trip
            out << buf << "\n";
        }
    }
    std::filesystem::rename(tmp, path);
}

bool load_null_table(NullTable& table, const std::string& dir) {
    const std::string path =
        dir + "/" + cache_key(table.delta, table.grid_n, table.replicates, table.seed) + ".tsv";
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "# null-table v1") return false;
    double delta = -1;
    int32_t grid = 0;
    int64_t reps = 0;
    uint64_t seed = 0;
    std::vector<double> samples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.find('\t') != std::string::npos) { // header key/value
            std::istringstream ss(line);
            std::string key;
            ss >> key;
            if (key == "delta") ss >> delta;
            else if (key == "grid") ss >> grid;
            else if (key == "replicates") ss >> reps;
            else if (key == "seed") ss >> seed;
            else return false;
            if (!ss) return false;
        } else { // hexfloat sample
            char* end = nullptr;
            const double v = std::strtod(line.c_str(), &end);
            if (end == line.c_str()) return false;
            samples.push_back(v);
        }
    }
    if (grid != table.grid_n || reps != table.replicates || seed != table.seed) return false;
    if (std::fabs(delta - table.delta) > 1e-12) return false;
    if (static_cast<int64_t>(samples.size()) != reps) return false;
    if (!std::is_sorted(samples.begin(), samples.end())) return false;
    table.sorted_samples = std::move(samples);
    return true;
}

const NullTable& NullTableProvider::table_for_window(int32_t xi, int64_t window_bins) {
    return table_for_delta(static_cast<double>(xi) / static_cast<double>(window_bins));
}

const NullTable& NullTableProvider::table_for_delta(double delta) {
    const double snapped = snap_delta(delta);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(snapped);
    if (it != tables_.end()) return it->second;

    NullTable probe;
    probe.delta = snapped;
    probe.grid_n = cfg_.grid_n;
    probe.replicates = cfg_.replicates;
    probe.seed = cfg_.seed;
    if (!cfg_.cache_dir.empty() && load_null_table(probe, cfg_.cache_dir)) {
        return tables_.emplace(snapped, std::move(probe)).first->second;
    }

    // One pass fills every grid delta; the cell draws dominate the cost.
    std::vector<double> all(std::begin(kDeltaGrid), std::end(kDeltaGrid));
    auto tables = simulate_null_grid(all, cfg_.grid_n, cfg_.replicates, cfg_.seed, cfg_.threads);
    ++simulations_run_;
    const NullTable* result = nullptr;
    for (auto& t : tables) {
        if (!cfg_.cache_dir.empty()) store_null_table(t, cfg_.cache_dir);
        const double d = t.delta;
        auto ins = tables_.emplace(d, std::move(t));
        if (d == snapped) result = &ins.first->second;
    }
    return *result;
}

} // namespace tadscan
