#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tadscan/compare.hpp"
#include "tadscan/contact_matrix.hpp"
#include "tadscan/evaluate.hpp"
#include "tadscan/glr.hpp"
#include "tadscan/hierarchy.hpp"
#include "tadscan/null_model.hpp"
#include "tadscan/segmenter.hpp"
#include "tadscan/simgen.hpp"

namespace tadscan {

inline constexpr const char* kCacheEnvVar = "TADSCAN_NULL_CACHE";

struct RunConfig {
    std::string command;
    std::string input;
    std::string input_b; // compare: second boundary set
    MatrixFormat format = MatrixFormat::triplet;
    int64_t resolution = 25000;
    double alpha0 = 0.05;
    double alpha1 = 1e-5;
    int32_t xi = 0; // 0 -> ceil(100 kb / resolution)
    std::string null_cache;
    int32_t null_grid = 400;
    int64_t null_replicates = 100000;
    uint64_t seed = 1;
    int threads = 1;
    std::string out;
    std::string chrom = "chr";
    bool emit_profile = false;
    std::optional<int32_t> first_split;

    // simulate / evaluate
    std::string design = "nb"; // gaussian | nb | nested
    int32_t sim_n = 500;
    int32_t sim_k = 31;
    double sqrt_nu = 0.0;
    std::vector<double> noise_grid;
    int32_t replicates = 10;
    int32_t tol_bins = 1;

    // compare
    int32_t compare_tol = 2;
    double conserved_alpha = 0.01;

    // evaluate (single mode)
    std::string detected_path;
    std::string domains_path;
    std::string truth_path;

    void validate() const;
    int32_t effective_xi() const;
    NullTableProvider::Config null_config() const;
};

struct DetectOutput {
    std::vector<ChangePoint> boundaries;
    TadTree tree;
    ScanResult full_scan; // profile of the first window when requested
    SegmentStats stats;
};

// In-memory pipeline: segment, prune, build hierarchy.
DetectOutput detect_matrix(const ContactMatrix& m, int32_t xi, double alpha0, double alpha1,
                           NullTableProvider& null, std::optional<int32_t> first_split = std::nullopt,
                           bool keep_profile = false);

// File-level commands used by the CLI; all exit by throwing on invalid input.
void run_detect(const RunConfig& cfg);
void run_compare(const RunConfig& cfg);
void run_simulate(const RunConfig& cfg);
void run_calibrate(const RunConfig& cfg);
void run_evaluate(const RunConfig& cfg);

// Boundary-file round trip (detect output, compare/evaluate input).
struct BoundaryFile {
    std::string chrom;
    int64_t resolution = 0;
    std::vector<BoundaryCall> calls;
    std::vector<int32_t> layers;
};
BoundaryFile read_boundaries(const std::string& path);
TadTree read_domains(const std::string& path, int32_t n_hint = 0);

} // namespace tadscan
