#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "tadscan/contact_matrix.hpp"
#include "tadscan/rng.hpp"

using namespace tadscan;

namespace {

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

ContactMatrix random_matrix(int32_t n, uint64_t seed, double zero_frac = 0.3) {
    Rng rng(seed);
    std::vector<Entry> entries;
    for (int32_t i = 1; i <= n; ++i) {
        for (int32_t j = i; j <= n; ++j) {
            if (rng.uniform() < zero_frac) continue;
            entries.push_back({i, j, double(1 + rng.uniform_int(0, 20))});
        }
    }
    return ContactMatrix(n, 25000, std::move(entries));
}

} // namespace

TEST_SUITE("contact_matrix") {

TEST_CASE("dense load keeps upper-triangle non-zeros") {
    const std::string path = temp_file("cm_dense.tsv");
    write_file(path, "4 2 0\n2 5 1\n0 1 6\n");
    const ContactMatrix m = load_matrix(path, MatrixFormat::dense, 25000);
    CHECK(m.n() == 3);
    CHECK(m.nnz() == 5);
    CHECK(m.value(1, 1) == 4);
    CHECK(m.value(1, 2) == 2);
    CHECK(m.value(2, 1) == 2); // mirrored query
    CHECK(m.value(2, 2) == 5);
    CHECK(m.value(2, 3) == 1);
    CHECK(m.value(3, 3) == 6);
    CHECK(m.value(1, 3) == 0.0);
}

TEST_CASE("dense load rejects bad grids") {
    const std::string sq = temp_file("cm_nonsquare.tsv");
    write_file(sq, "1 2\n2 1\n0 0\n");
    CHECK_THROWS(load_matrix(sq, MatrixFormat::dense, 25000));
    const std::string asym = temp_file("cm_asym.tsv");
    write_file(asym, "1 2\n3 1\n");
    CHECK_THROWS(load_matrix(asym, MatrixFormat::dense, 25000));
    const std::string neg = temp_file("cm_neg.tsv");
    write_file(neg, "1 -2\n-2 1\n");
    CHECK_THROWS(load_matrix(neg, MatrixFormat::dense, 25000));
}

TEST_CASE("triplet load with genomic coordinates") {
    const std::string path = temp_file("cm_triplet.tsv");
    write_file(path, "# comment line\n100000 125000 7\n0 0 3\n");
    const ContactMatrix m = load_matrix(path, MatrixFormat::triplet, 25000);
    CHECK(m.n() == 6);
    CHECK(m.value(5, 6) == 7);
    CHECK(m.value(1, 1) == 3);
    CHECK(m.nnz() == 2);
}

TEST_CASE("triplet load with bin indices and symmetric duplicates") {
    const std::string path = temp_file("cm_triplet_bins.tsv");
    write_file(path, "1 2 5\n2 1 5\n2 3 4\n");
    const ContactMatrix m = load_matrix(path, MatrixFormat::triplet, 25000);
    CHECK(m.n() == 3);
    CHECK(m.nnz() == 2);
    CHECK(m.value(1, 2) == 5);
}

TEST_CASE("empty triplet file errors") {
    const std::string path = temp_file("cm_empty.tsv");
    write_file(path, "# nothing\n");
    CHECK_THROWS_WITH_AS(load_matrix(path, MatrixFormat::triplet, 25000),
                         doctest::Contains("no entries"), std::runtime_error);
}

TEST_CASE("genomic coordinate not divisible by resolution errors") {
    const std::string path = temp_file("cm_baddiv.tsv");
    write_file(path, "100000 125001 7\n5000000 5000000 2\n");
    CHECK_THROWS(load_matrix(path, MatrixFormat::triplet, 25000));
}

TEST_CASE("window sums on a constant matrix match cardinalities") {
    std::vector<Entry> entries;
    for (int32_t i = 1; i <= 4; ++i)
        for (int32_t j = i; j <= 4; ++j) entries.push_back({i, j, 1.0});
    const ContactMatrix m(4, 25000, std::move(entries));
    const RegionSums sums(m, 1, 4);
    CHECK(sums.s_a1(2) == 3.0);
    CHECK(sums.s_a2(2) == 3.0);
    CHECK(sums.s_r(2) == 4.0);
    CHECK(sums.cells_a1(2) == 3);
    CHECK(sums.cells_a2(2) == 3);
    CHECK(sums.cells_r(2) == 4);
}

TEST_CASE("single entry strictly inside the rectangle") {
    const ContactMatrix m(4, 25000, {{1, 4, 9.0}});
    const RegionSums sums(m, 1, 4);
    CHECK(sums.s_r(2) == 9.0);
    CHECK(sums.s_a1(2) == 0.0);
    CHECK(sums.s_a2(2) == 0.0);
}

TEST_CASE("window sums equal brute force at every split") {
    const ContactMatrix m = random_matrix(20, 99);
    for (int32_t lo : {1, 3}) {
        const int32_t hi = lo == 1 ? 20 : 17;
        const RegionSums sums(m, lo, hi);
        for (int32_t cut = lo; cut < hi; ++cut) {
            double a1 = 0, a2 = 0, r = 0;
            for (int32_t i = lo; i <= hi; ++i) {
                for (int32_t j = i; j <= hi; ++j) {
                    const double v = m.value(i, j);
                    if (j <= cut) a1 += v;
                    else if (i > cut) a2 += v;
                    else r += v;
                }
            }
            CHECK(sums.s_a1(cut) == doctest::Approx(a1).epsilon(1e-12));
            CHECK(sums.s_a2(cut) == doctest::Approx(a2).epsilon(1e-12));
            CHECK(sums.s_r(cut) == doctest::Approx(r).epsilon(1e-12));
            // block sums and cardinalities tile the window exactly
            CHECK(sums.s_a1(cut) + sums.s_a2(cut) + sums.s_r(cut) ==
                  doctest::Approx(sums.s_all()).epsilon(1e-12));
            CHECK(sums.cells_a1(cut) + sums.cells_a2(cut) + sums.cells_r(cut) == sums.cells_all());
        }
    }
}

TEST_CASE("window bounds are validated") {
    const ContactMatrix m = random_matrix(8, 5);
    CHECK_THROWS(RegionSums(m, 3, 3));
    CHECK_THROWS(RegionSums(m, 5, 4));
    CHECK_THROWS(RegionSums(m, 0, 4));
}

TEST_CASE("round trip preserves the entry set in both formats") {
    const ContactMatrix m = random_matrix(15, 17);
    const std::string tri = temp_file("cm_rt_tri.tsv");
    const std::string den = temp_file("cm_rt_den.tsv");
    m.write_triplet(tri);
    m.write_dense(den);
    const ContactMatrix mt = load_matrix(tri, MatrixFormat::triplet, 25000);
    const ContactMatrix md = load_matrix(den, MatrixFormat::dense, 25000);
    REQUIRE(mt.n() == m.n());
    REQUIRE(md.n() == m.n());
    const auto e0 = m.entries();
    const auto e1 = mt.entries();
    const auto e2 = md.entries();
    REQUIRE(e1.size() == e0.size());
    REQUIRE(e2.size() == e0.size());
    for (size_t k = 0; k < e0.size(); ++k) {
        CHECK(e1[k].i == e0[k].i);
        CHECK(e1[k].j == e0[k].j);
        CHECK(e1[k].value == e0[k].value);
        CHECK(e2[k].value == e0[k].value);
    }
}

TEST_CASE("storage grows with non-zero count only") {
    // 200 bins but just three stored entries
    const ContactMatrix sparse(200, 25000, {{1, 1, 2.0}, {50, 120, 1.0}, {199, 200, 4.0}});
    CHECK(sparse.nnz() == 3);
    CHECK(sparse.entries().size() == 3);
}

} // TEST_SUITE
