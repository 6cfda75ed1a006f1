#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tadscan/evaluate.hpp"
#include "tadscan/pipeline.hpp"

using namespace tadscan;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "tadscan_pipeline_tests";
    fs::create_directories(dir);
    return dir;
}

RunConfig base_config() {
    RunConfig cfg;
    cfg.resolution = 25000;
    cfg.xi = 3;
    cfg.alpha0 = 0.05;
    cfg.alpha1 = 1e-3; // reachable with the small test table
    cfg.null_grid = 100;
    cfg.null_replicates = 2000;
    cfg.null_cache = TADSCAN_TEST_CACHE;
    cfg.seed = 17;
    return cfg;
}

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("detect finds planted boundaries and writes both outputs") {
    const auto dir = work_dir();
    RunConfig cfg = base_config();
    cfg.input = (dir / "sim.matrix.tsv").string();
    cfg.out = (dir / "run1").string();

    const GroundTruth truth = gen_nb(200, 12, 0.0, 99);
    truth.matrix.write_triplet(cfg.input);
    run_detect(cfg);

    const BoundaryFile bf = read_boundaries(cfg.out + ".boundaries.tsv");
    CHECK(bf.resolution == 25000);
    std::vector<int32_t> det;
    for (const auto& c : bf.calls) det.push_back(c.position);
    const auto s = score_boundaries(det, truth.boundaries, 1);
    CHECK(s.tpr >= 0.9);
    CHECK(std::abs(s.k_diff) <= 2);

    const TadTree tree = read_domains(cfg.out + ".domains.tsv");
    CHECK(!tree.roots.empty());
    CHECK(tree.nodes.size() >= bf.calls.size() + 1);
    // leaves tile [1, n]
    int64_t covered = 0;
    for (const auto& nd : tree.nodes)
        if (nd.children.empty()) covered += nd.end - nd.start + 1;
    CHECK(covered == 200);
}

TEST_CASE("detect output is byte-identical across runs and thread counts") {
    const auto dir = work_dir();
    RunConfig cfg = base_config();
    cfg.input = (dir / "sim2.matrix.tsv").string();
    const GroundTruth truth = gen_nb(150, 8, 0.05, 5);
    truth.matrix.write_triplet(cfg.input);

    cfg.out = (dir / "detA").string();
    run_detect(cfg);
    cfg.out = (dir / "detB").string();
    run_detect(cfg);
    cfg.out = (dir / "detC").string();
    cfg.threads = 3;
    run_detect(cfg);

    CHECK(slurp((dir / "detA.boundaries.tsv").string()) ==
          slurp((dir / "detB.boundaries.tsv").string()));
    CHECK(slurp((dir / "detA.domains.tsv").string()) == slurp((dir / "detB.domains.tsv").string()));
    CHECK(slurp((dir / "detA.boundaries.tsv").string()) ==
          slurp((dir / "detC.boundaries.tsv").string()));
}

TEST_CASE("undersized matrices fail cleanly without output files") {
    const auto dir = work_dir();
    RunConfig cfg = base_config();
    cfg.xi = 40;
    cfg.input = (dir / "small.matrix.tsv").string();
    cfg.out = (dir / "small_out").string();
    const GroundTruth truth = gen_nb(60, 3, 0.0, 1);
    truth.matrix.write_triplet(cfg.input);
    CHECK_THROWS(run_detect(cfg));
    CHECK_FALSE(fs::exists(dir / "small_out.boundaries.tsv"));
    CHECK_FALSE(fs::exists(dir / "small_out.domains.tsv"));
}

TEST_CASE("config validation") {
    RunConfig cfg = base_config();
    cfg.alpha1 = 0.5; // above alpha0
    CHECK_THROWS(cfg.validate());
    cfg = base_config();
    cfg.resolution = 0;
    CHECK_THROWS(cfg.validate());
    cfg = base_config();
    cfg.xi = 1;
    CHECK_THROWS(cfg.validate());
    // default xi from resolution: ceil(100kb / 40kb) = 3
    cfg = base_config();
    cfg.xi = 0;
    cfg.resolution = 40000;
    CHECK(cfg.effective_xi() == 3);
    cfg.resolution = 25000;
    CHECK(cfg.effective_xi() == 4);
}

TEST_CASE("compare: a file against itself is fully conserved") {
    const auto dir = work_dir();
    RunConfig det = base_config();
    det.input = (dir / "sim3.matrix.tsv").string();
    det.out = (dir / "run3").string();
    const GroundTruth truth = gen_nb(200, 12, 0.0, 23);
    truth.matrix.write_triplet(det.input);
    run_detect(det);

    RunConfig cmp;
    cmp.input = det.out + ".boundaries.tsv";
    cmp.input_b = det.out + ".boundaries.tsv";
    cmp.out = (dir / "self.compare.tsv").string();
    run_compare(cmp);
    const std::string text = slurp(cmp.out);
    CHECK(text.find("changed_in_a=0") != std::string::npos);
    CHECK(text.find("changed_in_b=0") != std::string::npos);
    CHECK(text.find("conserved") != std::string::npos);
}

TEST_CASE("compare: disjoint boundary sets match nothing") {
    const auto dir = work_dir();
    const auto write_bounds = [&](const std::string& name, std::initializer_list<int> bins) {
        std::ofstream out(dir / name);
        out << "# tadscan boundaries v1\n# chrom=chr resolution=25000\n";
        out << "# columns: chrom\tbin\tgenomic_start\tp_value\tlayer\n";
        for (int b : bins) out << "chr\t" << b << '\t' << (b - 1) * 25000 << "\t0.001\t0\n";
    };
    write_bounds("da.tsv", {10, 40, 80});
    write_bounds("db.tsv", {20, 60, 100});
    RunConfig cmp;
    cmp.input = (dir / "da.tsv").string();
    cmp.input_b = (dir / "db.tsv").string();
    cmp.out = (dir / "disjoint.compare.tsv").string();
    run_compare(cmp);
    const std::string text = slurp(cmp.out);
    CHECK(text.find("matched=0") != std::string::npos);
    CHECK(text.find("changed_in_a=3") != std::string::npos);
    CHECK(text.find("changed_in_b=3") != std::string::npos);
}

TEST_CASE("compare rejects mismatched resolutions") {
    const auto dir = work_dir();
    std::ofstream(dir / "ra.tsv") << "# resolution=25000\nchr\t5\t100000\t0.01\t0\n";
    std::ofstream(dir / "rb.tsv") << "# resolution=40000\nchr\t5\t160000\t0.01\t0\n";
    RunConfig cmp;
    cmp.input = (dir / "ra.tsv").string();
    cmp.input_b = (dir / "rb.tsv").string();
    cmp.out = (dir / "bad.compare.tsv").string();
    CHECK_THROWS(run_compare(cmp));
}

TEST_CASE("simulate then evaluate the pipeline's own output") {
    const auto dir = work_dir();
    RunConfig sim = base_config();
    sim.design = "nb";
    sim.sim_n = 200;
    sim.sim_k = 12;
    sim.sqrt_nu = 0.05;
    sim.seed = 31;
    sim.out = (dir / "sim5").string();
    run_simulate(sim);
    CHECK(fs::exists(dir / "sim5.matrix.tsv"));
    CHECK(fs::exists(dir / "sim5.truth.tsv"));

    RunConfig det = base_config();
    det.input = sim.out + ".matrix.tsv";
    det.out = (dir / "run5").string();
    run_detect(det);

    RunConfig ev = base_config();
    ev.detected_path = det.out + ".boundaries.tsv";
    ev.domains_path = det.out + ".domains.tsv";
    ev.truth_path = sim.out + ".truth.tsv";
    ev.out = (dir / "score5.tsv").string();
    run_evaluate(ev);
    const std::string text = slurp(ev.out);
    CHECK(text.find("tpr\t") != std::string::npos);
    double tpr = -1;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind("tpr\t", 0) == 0) tpr = std::stod(line.substr(4));
    }
    CHECK(tpr >= 0.0);
    CHECK(tpr <= 1.0);
}

TEST_CASE("sweep-mode evaluate writes one row per noise level") {
    const auto dir = work_dir();
    RunConfig cfg = base_config();
    cfg.design = "nb";
    cfg.sim_n = 150;
    cfg.sim_k = 8;
    cfg.replicates = 2;
    cfg.noise_grid = {0.0, 0.1};
    cfg.out = (dir / "sweep.tsv").string();
    run_evaluate(cfg);
    std::istringstream ss(slurp(cfg.out));
    std::string line;
    int data_rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++data_rows;
        int cols = 1;
        for (char c : line)
            if (c == '\t') ++cols;
        CHECK(cols == 8); // sqrt_nu, tpr/fdr/kdiff mean+sd, sec per matrix
    }
    CHECK(data_rows == 2);
}

TEST_CASE("emit-profile writes the whole-matrix scan profile") {
    const auto dir = work_dir();
    RunConfig cfg = base_config();
    cfg.input = (dir / "sim_prof.matrix.tsv").string();
    cfg.out = (dir / "prof_run").string();
    cfg.emit_profile = true;
    const GroundTruth truth = gen_nb(120, 6, 0.0, 77);
    truth.matrix.write_triplet(cfg.input);
    run_detect(cfg);
    std::istringstream ss(slurp(cfg.out + ".profile.tsv"));
    std::string line;
    int rows = 0;
    int32_t first_pos = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (rows == 0) first_pos = std::stoi(line);
        ++rows;
    }
    CHECK(rows == 120 - 2 * 3 + 1); // one z per admissible split
    CHECK(first_pos == 1 + 3);      // first admissible boundary position
}

TEST_CASE("calibrate twice produces byte-identical cache files") {
    const auto dir = work_dir() / "calib_cache";
    fs::remove_all(dir);
    RunConfig cfg = base_config();
    cfg.null_cache = dir.string();
    run_calibrate(cfg);
    // re-read one table file, wipe, recalibrate, compare bytes
    std::string first_file;
    for (const auto& e : fs::directory_iterator(dir)) {
        first_file = e.path().filename().string();
        break;
    }
    REQUIRE(!first_file.empty());
    const std::string before = slurp((dir / first_file).string());
    fs::remove_all(dir);
    run_calibrate(cfg);
    CHECK(slurp((dir / first_file).string()) == before);
    fs::remove_all(dir);
}

TEST_CASE("cli binary: end-to-end detect and self-compare") {
    const auto dir = work_dir();
    const std::string prefix = (dir / "cli_run").string();
    const std::string sim = (dir / "cli_sim").string();
    const std::string cli = TADSCAN_CLI_PATH;
    const std::string cache = TADSCAN_TEST_CACHE;

    auto run = [&](const std::string& args) {
        return std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    };
    REQUIRE(run("simulate --design nb --n 200 --k 12 --noise 0 --seed 7 --out " + sim) == 0);
    REQUIRE(run("detect --input " + sim + ".matrix.tsv --resolution 25000 --min-tad-bins 3"
                " --alpha1 1e-3 --null-grid 100 --null-replicates 2000 --null-cache " + cache +
                " --out " + prefix) == 0);
    CHECK(fs::exists(prefix + ".boundaries.tsv"));
    CHECK(fs::exists(prefix + ".domains.tsv"));
    REQUIRE(run("compare --input-a " + prefix + ".boundaries.tsv --input-b " + prefix +
                ".boundaries.tsv --out " + prefix + ".cmp.tsv") == 0);
    CHECK(slurp(prefix + ".cmp.tsv").find("changed_in_a=0") != std::string::npos);
    // bad input: nonzero exit, no outputs
    CHECK(run("detect --input /nonexistent.tsv --out " + prefix + "_bad") != 0);
    CHECK_FALSE(fs::exists(prefix + "_bad.boundaries.tsv"));
}

} // TEST_SUITE
