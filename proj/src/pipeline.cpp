#include "tadscan/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tadscan/glr.hpp"

namespace tadscan {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string default_cache_dir() {
    const char* env = std::getenv(kCacheEnvVar);
    return env ? env : "";
}

void write_config_line(std::ofstream& out, const RunConfig& cfg) {
    out << "# chrom=" << cfg.chrom << " resolution=" << cfg.resolution << " alpha0=" << fmt(cfg.alpha0)
        << " alpha1=" << fmt(cfg.alpha1) << " xi=" << cfg.effective_xi() << " seed=" << cfg.seed
        << " null_grid=" << cfg.null_grid << " null_replicates=" << cfg.null_replicates << "\n";
}

} // namespace

void RunConfig::validate() const {
    if (!(alpha1 > 0.0) || !(alpha1 <= alpha0) || !(alpha0 < 1.0))
        throw std::invalid_argument("need 0 < alpha1 <= alpha0 < 1");
    if (resolution <= 0) throw std::invalid_argument("resolution must be positive");
    if (effective_xi() < 2) throw std::invalid_argument("minimum TAD size must be >= 2 bins");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

int32_t RunConfig::effective_xi() const { return xi > 0 ? xi : default_min_tad_bins(resolution); }

NullTableProvider::Config RunConfig::null_config() const {
    NullTableProvider::Config c;
    c.grid_n = null_grid;
    c.replicates = null_replicates;
    c.seed = seed;
    c.threads = threads;
    c.cache_dir = null_cache.empty() ? default_cache_dir() : null_cache;
    return c;
}

DetectOutput detect_matrix(const ContactMatrix& m, int32_t xi, double alpha0, double alpha1,
                           NullTableProvider& null, std::optional<int32_t> first_split,
                           bool keep_profile) {
    DetectOutput out;
    if (static_cast<int64_t>(m.n()) < 2 * static_cast<int64_t>(xi))
        throw std::invalid_argument("matrix smaller than twice the minimum TAD size");
    if (keep_profile) out.full_scan = scan_window(m, 1, m.n(), xi, true);
    auto candidates = binary_segment(m, xi, first_split, &out.stats);
    out.boundaries = prune(m, std::move(candidates), xi, alpha0, null);
    out.tree = build_hierarchy(m, out.boundaries, xi, alpha1, null);
    out.boundaries = out.tree.boundaries; // layers filled in
    return out;
}

void run_detect(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.out.empty()) throw std::invalid_argument("detect: --out is required");
    const ContactMatrix m = load_matrix(cfg.input, cfg.format, cfg.resolution, cfg.chrom);
    const int32_t xi = cfg.effective_xi();
    if (static_cast<int64_t>(m.n()) < 2 * static_cast<int64_t>(xi))
        throw std::invalid_argument("matrix smaller than twice the minimum TAD size");

    NullTableProvider null(cfg.null_config());
    const DetectOutput res =
        detect_matrix(m, xi, cfg.alpha0, cfg.alpha1, null, cfg.first_split, cfg.emit_profile);

    {
        std::ofstream out(cfg.out + ".boundaries.tsv");
        if (!out) throw std::runtime_error("cannot write " + cfg.out + ".boundaries.tsv");
        out << "# tadscan boundaries v1\n";
        write_config_line(out, cfg);
        out << "# columns: chrom\tbin\tgenomic_start\tp_value\tlayer\n";
        for (const auto& b : res.boundaries) {
            out << cfg.chrom << '\t' << b.position << '\t'
                << static_cast<int64_t>(b.position - 1) * cfg.resolution << '\t' << fmt(b.p_value)
                << '\t' << b.layer << '\n';
        }
    }
    {
        std::ofstream out(cfg.out + ".domains.tsv");
        if (!out) throw std::runtime_error("cannot write " + cfg.out + ".domains.tsv");
        out << "# tadscan domains v1\n";
        write_config_line(out, cfg);
        out << "# columns: chrom\tstart_bin\tend_bin\torder\n";
        std::vector<int32_t> stack(res.tree.roots.rbegin(), res.tree.roots.rend());
        while (!stack.empty()) {
            const TadNode& node = res.tree.nodes[stack.back()];
            stack.pop_back();
            out << cfg.chrom << '\t' << node.start << '\t' << node.end << '\t' << node.order << '\n';
            for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
                stack.push_back(*it);
        }
    }
    if (cfg.emit_profile) {
        std::ofstream out(cfg.out + ".profile.tsv");
        out << "# tadscan scan profile v1\n# columns: boundary_pos\tz\n";
        for (size_t k = 0; k < res.full_scan.z_profile.size(); ++k) {
            out << res.full_scan.first_cut + static_cast<int32_t>(k) + 1 << '\t'
                << fmt(res.full_scan.z_profile[k]) << '\n';
        }
    }
}

BoundaryFile read_boundaries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    BoundaryFile bf;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "resolution") bf.resolution = std::stoll(val);
                else if (key == "chrom") bf.chrom = val;
            }
            continue;
        }
        std::istringstream ss(line);
        std::string chrom;
        int64_t bin, gstart;
        double p;
        int32_t layer;
        if (!(ss >> chrom >> bin >> gstart >> p >> layer))
            throw std::runtime_error(path + ": malformed boundary line");
        bf.calls.push_back({static_cast<int32_t>(bin), p});
        bf.layers.push_back(layer);
    }
    return bf;
}

TadTree read_domains(const std::string& path, int32_t n_hint) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    struct Row {
        int32_t start, end, order;
    };
    std::vector<Row> rows;
    int32_t n = n_hint;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string chrom;
        Row r{};
        if (!(ss >> chrom >> r.start >> r.end >> r.order))
            throw std::runtime_error(path + ": malformed domain line");
        rows.push_back(r);
        n = std::max(n, r.end);
    }
    TadTree tree;
    tree.n = n;
    // rows are in DFS order: reconstruct nesting by a stack of open intervals
    std::vector<int32_t> stack;
    for (const auto& r : rows) {
        const int32_t id = static_cast<int32_t>(tree.nodes.size());
        tree.nodes.push_back({r.start, r.end, r.order, {}});
        while (!stack.empty()) {
            const TadNode& top = tree.nodes[stack.back()];
            if (r.start >= top.start && r.end <= top.end && r.order == top.order + 1) break;
            stack.pop_back();
        }
        if (stack.empty()) {
            if (r.order != 1) throw std::runtime_error(path + ": domain nesting is inconsistent");
            tree.roots.push_back(id);
        } else {
            tree.nodes[stack.back()].children.push_back(id);
        }
        stack.push_back(id);
    }
    return tree;
}

void run_compare(const RunConfig& cfg) {
    if (cfg.out.empty()) throw std::invalid_argument("compare: --out is required");
    if (!(cfg.conserved_alpha > 0.0 && cfg.conserved_alpha < 1.0))
        throw std::invalid_argument("compare: conserved-alpha must be in (0,1)");
    const BoundaryFile a = read_boundaries(cfg.input);
    const BoundaryFile b = read_boundaries(cfg.input_b);
    if (a.resolution > 0 && b.resolution > 0 && a.resolution != b.resolution)
        throw std::invalid_argument("compare: inputs have different resolutions");
    const auto matches = match_and_classify(a.calls, b.calls, cfg.compare_tol, cfg.conserved_alpha);

    int64_t conserved = 0, weak = 0, in_a = 0, in_b = 0;
    for (const auto& m : matches) {
        switch (m.classification) {
            case MatchClass::conserved: ++conserved; break;
            case MatchClass::matched_weak: ++weak; break;
            case MatchClass::changed_in_a: ++in_a; break;
            case MatchClass::changed_in_b: ++in_b; break;
        }
    }
    std::ofstream out(cfg.out);
    if (!out) throw std::runtime_error("cannot write " + cfg.out);
    out << "# tadscan compare v1\n";
    out << "# tol_bins=" << cfg.compare_tol << " conserved_alpha=" << fmt(cfg.conserved_alpha) << "\n";
    out << "# summary: matched=" << conserved + weak << " conserved=" << conserved
        << " matched_weak=" << weak << " changed_in_a=" << in_a << " changed_in_b=" << in_b << "\n";
    out << "# columns: pos_a\tpos_b\tp_a\tp_b\tp_fisher\tclassification\n";
    for (const auto& m : matches) {
        out << (m.pos_a ? std::to_string(*m.pos_a) : "NA") << '\t'
            << (m.pos_b ? std::to_string(*m.pos_b) : "NA") << '\t'
            << (m.pos_a ? fmt(m.p_a) : "NA") << '\t' << (m.pos_b ? fmt(m.p_b) : "NA") << '\t'
            << (m.p_fisher ? fmt(*m.p_fisher) : "NA") << '\t' << to_string(m.classification)
            << '\n';
    }
}

void run_simulate(const RunConfig& cfg) {
    if (cfg.out.empty()) throw std::invalid_argument("simulate: --out is required");
    GroundTruth truth = [&] {
        if (cfg.design == "gaussian")
            return gen_gaussian(cfg.sim_n, cfg.sim_k, cfg.sqrt_nu, cfg.seed, cfg.resolution);
        if (cfg.design == "nb")
            return gen_nb(cfg.sim_n, cfg.sim_k, cfg.sqrt_nu, cfg.seed, cfg.resolution);
        if (cfg.design == "nested") {
            NestedConfig nc;
            nc.n = cfg.sim_n;
            nc.sqrt_nu = cfg.sqrt_nu;
            nc.seed = cfg.seed;
            nc.resolution = cfg.resolution;
            return gen_nested(nc);
        }
        throw std::invalid_argument("simulate: unknown design " + cfg.design);
    }();
    if (cfg.format == MatrixFormat::dense) {
        truth.matrix.write_dense(cfg.out + ".matrix.tsv");
    } else {
        truth.matrix.write_triplet(cfg.out + ".matrix.tsv");
    }
    write_truth(truth, cfg.out + ".truth.tsv");
}

void run_calibrate(const RunConfig& cfg) {
    NullTableProvider::Config nc = cfg.null_config();
    if (nc.cache_dir.empty())
        throw std::invalid_argument("calibrate: set --null-cache or " + std::string(kCacheEnvVar));
    NullTableProvider provider(nc);
    for (double d : kDeltaGrid) provider.table_for_delta(d);
}

namespace {

struct SweepRow {
    double sqrt_nu;
    double tpr_mean, tpr_sd, fdr_mean, fdr_sd, kdiff_mean, kdiff_sd;
    double seconds_per_matrix;
};

SweepRow sweep_noise_level(const RunConfig& cfg, double sqrt_nu, NullTableProvider& null) {
    std::vector<double> tprs, fdrs, kdiffs;
    const auto t0 = std::chrono::steady_clock::now();
    for (int32_t rep = 0; rep < cfg.replicates; ++rep) {
        const uint64_t seed = cfg.seed + 7919ULL * static_cast<uint64_t>(rep) +
                              static_cast<uint64_t>(sqrt_nu * 1e6);
        const GroundTruth truth = cfg.design == "gaussian"
                                      ? gen_gaussian(cfg.sim_n, cfg.sim_k, sqrt_nu, seed)
                                      : gen_nb(cfg.sim_n, cfg.sim_k, sqrt_nu, seed);
        const DetectOutput det =
            detect_matrix(truth.matrix, cfg.effective_xi(), cfg.alpha0, cfg.alpha1, null);
        std::vector<int32_t> detected;
        for (const auto& b : det.boundaries) detected.push_back(b.position);
        const BoundaryScore s = score_boundaries(detected, truth.boundaries, cfg.tol_bins);
        tprs.push_back(s.tpr);
        fdrs.push_back(s.fdr);
        kdiffs.push_back(static_cast<double>(s.k_diff));
    }
    const auto t1 = std::chrono::steady_clock::now();
    const auto moments = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
        return std::pair<double, double>(mean, std::sqrt(var));
    };
    SweepRow row{};
    row.sqrt_nu = sqrt_nu;
    std::tie(row.tpr_mean, row.tpr_sd) = moments(tprs);
    std::tie(row.fdr_mean, row.fdr_sd) = moments(fdrs);
    std::tie(row.kdiff_mean, row.kdiff_sd) = moments(kdiffs);
    row.seconds_per_matrix =
        std::chrono::duration<double>(t1 - t0).count() / std::max(1, cfg.replicates);
    return row;
}

} // namespace

void run_evaluate(const RunConfig& cfg) {
    if (cfg.out.empty()) throw std::invalid_argument("evaluate: --out is required");
    std::ofstream out(cfg.out);
    if (!out) throw std::runtime_error("cannot write " + cfg.out);

    if (!cfg.detected_path.empty()) {
        // single mode: score one detected set against one truth file
        if (cfg.truth_path.empty()) throw std::invalid_argument("evaluate: --truth is required");
        const BoundaryFile det = read_boundaries(cfg.detected_path);
        std::vector<int32_t> truth_pos, truth_lvl;
        read_truth(cfg.truth_path, truth_pos, truth_lvl);
        std::vector<int32_t> detected;
        for (const auto& c : det.calls) detected.push_back(c.position);
        const BoundaryScore s = score_boundaries(detected, truth_pos, cfg.tol_bins);
        out << "# tadscan scorecard v1\n# columns: metric\tvalue\n";
        out << "tpr\t" << fmt(s.tpr) << "\nfdr\t" << fmt(s.fdr) << "\nk_diff\t" << s.k_diff << "\n";
        if (!cfg.domains_path.empty()) {
            const int32_t max_level = *std::max_element(truth_lvl.begin(), truth_lvl.end());
            const TadTree dtree = read_domains(cfg.domains_path);
            const TadTree ttree = tree_from_levels(dtree.n, truth_pos, truth_lvl);
            for (int32_t k = 1; k <= max_level; ++k) {
                const auto pd = partition_at_order(dtree, k);
                const auto pt = partition_at_order(ttree, k);
                out << "b_" << k << '\t' << fmt(fowlkes_mallows(pd, pt)) << '\n';
                out << "b_" << k << "_control\t" << fmt(relabel_control(pd, pt, 1000, cfg.seed + k))
                    << '\n';
            }
        }
        return;
    }

    // sweep mode: simulate + detect + score across the noise grid
    RunConfig c = cfg;
    c.validate();
    if (c.noise_grid.empty()) c.noise_grid = {0.0, 0.05, 0.10, 0.15};
    NullTableProvider null(c.null_config());
    out << "# tadscan evaluation sweep v1\n";
    out << "# design=" << c.design << " n=" << c.sim_n << " k=" << c.sim_k
        << " replicates=" << c.replicates << " tol_bins=" << c.tol_bins << " alpha0=" << fmt(c.alpha0)
        << " alpha1=" << fmt(c.alpha1) << " seed=" << c.seed << "\n";
    out << "# columns: sqrt_nu\ttpr_mean\ttpr_sd\tfdr_mean\tfdr_sd\tkdiff_mean\tkdiff_sd\tsec_per_"
           "matrix\n";
    for (double nu : c.noise_grid) {
        const SweepRow r = sweep_noise_level(c, nu, null);
        out << fmt(r.sqrt_nu) << '\t' << fmt(r.tpr_mean) << '\t' << fmt(r.tpr_sd) << '\t'
            << fmt(r.fdr_mean) << '\t' << fmt(r.fdr_sd) << '\t' << fmt(r.kdiff_mean) << '\t'
            << fmt(r.kdiff_sd) << '\t' << fmt(r.seconds_per_matrix) << '\n';
    }
}

} // namespace tadscan
