#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "tadscan/kernels.hpp"
#include "tadscan/pipeline.hpp"

namespace {

void add_null_options(CLI::App* cmd, tadscan::RunConfig& cfg) {
    cmd->add_option("--null-cache", cfg.null_cache,
                    "Null-table cache directory (default: $TADSCAN_NULL_CACHE)");
    cmd->add_option("--null-grid", cfg.null_grid, "Null simulation grid size")->default_val(400);
    cmd->add_option("--null-replicates", cfg.null_replicates, "Null simulation replicates")
        ->default_val(100000);
}

} // namespace

int main(int argc, char** argv) {
    tadscan::RunConfig cfg;
    CLI::App app{"Hierarchical domain-boundary detection in contact matrices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tadscan 1.0");

    std::string format = "triplet";

    auto* detect = app.add_subcommand("detect", "Detect boundaries and their hierarchy");
    detect->add_option("--input", cfg.input, "Contact matrix file")->required();
    detect->add_option("--format", format, "Input format: dense | triplet")
        ->check(CLI::IsMember({"dense", "triplet"}));
    detect->add_option("--resolution", cfg.resolution, "Base pairs per bin")->default_val(25000);
    detect->add_option("--alpha0", cfg.alpha0, "Boundary retention p-value threshold")
        ->default_val(0.05);
    detect->add_option("--alpha1", cfg.alpha1, "Hierarchy merge p-value threshold")
        ->default_val(1e-5);
    detect->add_option("--min-tad-bins", cfg.xi,
                       "Minimum TAD size in bins (default: 100 kb / resolution, rounded up)");
    detect->add_option("--seed", cfg.seed, "Random seed")->default_val(1);
    detect->add_option("--threads", cfg.threads, "Worker threads")->default_val(1);
    detect->add_option("--out", cfg.out, "Output prefix")->required();
    detect->add_option("--chrom", cfg.chrom, "Chromosome label for outputs")->default_val("chr");
    detect->add_flag("--emit-profile", cfg.emit_profile,
                     "Also write the whole-matrix scan profile as TSV");
    int32_t first_split = 0;
    detect->add_option("--first-split", first_split,
                       "Force the first split at this bin (robustness testing)");
    add_null_options(detect, cfg);

    auto* compare = app.add_subcommand("compare", "Match two boundary sets and classify changes");
    compare->add_option("--input-a", cfg.input, "First boundaries.tsv")->required();
    compare->add_option("--input-b", cfg.input_b, "Second boundaries.tsv")->required();
    compare->add_option("--tol-bins", cfg.compare_tol, "Match tolerance in bins")->default_val(2);
    compare->add_option("--conserved-alpha", cfg.conserved_alpha,
                        "Combined p-value threshold for conserved boundaries")
        ->default_val(0.01);
    compare->add_option("--out", cfg.out, "Output TSV")->required();

    auto* simulate = app.add_subcommand("simulate", "Generate a ground-truthed matrix");
    simulate->add_option("--design", cfg.design, "gaussian | nb | nested")
        ->check(CLI::IsMember({"gaussian", "nb", "nested"}));
    simulate->add_option("--n", cfg.sim_n, "Matrix size in bins")->default_val(500);
    simulate->add_option("--k", cfg.sim_k, "Number of boundaries (gaussian/nb)")->default_val(31);
    simulate->add_option("--noise", cfg.sqrt_nu, "Biological coefficient of variation sqrt(nu)")
        ->default_val(0.0);
    simulate->add_option("--seed", cfg.seed, "Random seed")->default_val(1);
    simulate->add_option("--format", format, "Output format: dense | triplet")
        ->check(CLI::IsMember({"dense", "triplet"}));
    simulate->add_option("--resolution", cfg.resolution, "Base pairs per bin")->default_val(25000);
    simulate->add_option("--out", cfg.out, "Output prefix")->required();

    auto* calibrate = app.add_subcommand("calibrate", "Precompute null tables for the delta grid");
    calibrate->add_option("--seed", cfg.seed, "Random seed")->default_val(1);
    calibrate->add_option("--threads", cfg.threads, "Worker threads")->default_val(1);
    add_null_options(calibrate, cfg);

    auto* evaluate = app.add_subcommand("evaluate", "Score detections against ground truth");
    evaluate->add_option("--detected", cfg.detected_path, "boundaries.tsv to score (single mode)");
    evaluate->add_option("--domains", cfg.domains_path, "domains.tsv for hierarchy scoring");
    evaluate->add_option("--truth", cfg.truth_path, "truth.tsv sidecar");
    evaluate->add_option("--design", cfg.design, "Sweep mode design: gaussian | nb")
        ->check(CLI::IsMember({"gaussian", "nb"}));
    evaluate->add_option("--n", cfg.sim_n, "Sweep matrix size")->default_val(500);
    evaluate->add_option("--k", cfg.sim_k, "Sweep boundary count")->default_val(31);
    evaluate->add_option("--noise-grid", cfg.noise_grid, "Sweep sqrt(nu) values");
    evaluate->add_option("--replicates", cfg.replicates, "Sweep matrices per noise level")
        ->default_val(10);
    evaluate->add_option("--tol", cfg.tol_bins, "Boundary match tolerance in bins")->default_val(1);
    evaluate->add_option("--alpha0", cfg.alpha0, "Boundary retention threshold")->default_val(0.05);
    evaluate->add_option("--alpha1", cfg.alpha1, "Hierarchy merge threshold")->default_val(1e-5);
    evaluate->add_option("--min-tad-bins", cfg.xi, "Minimum TAD size in bins");
    evaluate->add_option("--resolution", cfg.resolution, "Base pairs per bin")->default_val(25000);
    evaluate->add_option("--seed", cfg.seed, "Random seed")->default_val(1);
    evaluate->add_option("--threads", cfg.threads, "Worker threads")->default_val(1);
    evaluate->add_option("--out", cfg.out, "Output TSV")->required();
    add_null_options(evaluate, cfg);

    auto* backend = app.add_subcommand("backend", "Print the selected compute backend");

    CLI11_PARSE(app, argc, argv);

    cfg.format = format == "dense" ? tadscan::MatrixFormat::dense : tadscan::MatrixFormat::triplet;
    if (detect->count("--first-split")) cfg.first_split = first_split;

    try {
        if (app.got_subcommand(detect)) {
            cfg.command = "detect";
            tadscan::run_detect(cfg);
        } else if (app.got_subcommand(compare)) {
            cfg.command = "compare";
            tadscan::run_compare(cfg);
        } else if (app.got_subcommand(simulate)) {
            cfg.command = "simulate";
            tadscan::run_simulate(cfg);
        } else if (app.got_subcommand(calibrate)) {
            cfg.command = "calibrate";
            tadscan::run_calibrate(cfg);
        } else if (app.got_subcommand(evaluate)) {
            cfg.command = "evaluate";
            tadscan::run_evaluate(cfg);
        } else if (app.got_subcommand(backend)) {
            std::printf("%s\n", tadscan::kernels::active_backend().c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tadscan: %s\n", e.what());
        return 1;
    }
    return 0;
}
