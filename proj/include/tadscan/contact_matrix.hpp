#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tadscan {

struct Entry {
    int32_t i; // 1-based bin, i <= j
    int32_t j;
    double value;
};

enum class MatrixFormat { dense, triplet };

// Symmetric contact matrix stored as non-zero upper-triangular entries with
// per-row and per-column prefix sums, so any window's row/column aggregates
// come out of binary searches instead of rescans. Immutable once built.
class ContactMatrix {
public:
    ContactMatrix(int32_t n, int64_t resolution, std::vector<Entry> entries,
                  std::string chrom = "chr");

    int32_t n() const { return n_; }
    int64_t resolution() const { return resolution_; }
    const std::string& chrom() const { return chrom_; }
    int64_t nnz() const { return nnz_; }

    // Value at (i, j); (j, i) with j > i resolves to the stored (i, j).
    double value(int32_t i, int32_t j) const;

    // Sum / sum of squares / stored-entry count over row i restricted to
    // columns [jlo, jhi] of the upper triangle.
    struct RangeMoments {
        double sum = 0.0;
        double sumsq = 0.0;
        int64_t count = 0;
    };
    RangeMoments row_range(int32_t i, int32_t jlo, int32_t jhi) const;

    // Sum over stored entries (i, j) of column j with ilo <= i <= j.
    double col_range_up(int32_t j, int32_t ilo) const;

    std::vector<Entry> entries() const; // sorted by (i, j)

    void write_dense(const std::string& path) const;
    void write_triplet(const std::string& path) const;

private:
    int32_t n_ = 0;
    int64_t resolution_ = 1;
    int64_t nnz_ = 0;
    std::string chrom_;

    struct Row {
        std::vector<int32_t> cols;
        std::vector<double> cum;   // cum[k] = sum of first k values
        std::vector<double> cumsq;
    };
    struct Col {
        std::vector<int32_t> rows;
        std::vector<double> cum;
    };
    std::vector<Row> rows_; // index 1..n
    std::vector<Col> cols_;
};

// Reads a dense whitespace grid or a "pos_i pos_j count" triplet list.
// Triplet positions are auto-detected as genomic coordinates (divided by the
// resolution, interval starts) or as 1-based bin indices.
ContactMatrix load_matrix(const std::string& path, MatrixFormat format, int64_t resolution,
                          const std::string& chrom = "chr");

// Row/column cumulative sums over a window [lo, hi], supporting O(1) block
// sums at every split. A "cut" m splits the window into a left block
// [lo, m] and a right block [m+1, hi]; the reported boundary position is
// m + 1 (the first bin of the right block).
class RegionSums {
public:
    RegionSums(const ContactMatrix& m, int32_t lo, int32_t hi);

    int32_t lo() const { return lo_; }
    int32_t hi() const { return hi_; }
    int32_t size() const { return hi_ - lo_ + 1; }

    double s_all() const { return u_.back(); }
    double sumsq_all() const { return sumsq_; }
    int64_t cells_all() const {
        const int64_t t = size();
        return t * (t + 1) / 2;
    }

    // Block sums at cut m (lo <= m < hi).
    double s_a1(int32_t m) const { return u_[m - lo_ + 1]; }
    double s_a1r(int32_t m) const { return v_[m - lo_ + 1]; }
    double s_r(int32_t m) const { return s_a1r(m) - s_a1(m); }
    double s_a2(int32_t m) const { return s_all() - s_a1r(m); }

    // Upper-triangular cell counts of the blocks at cut m.
    int64_t cells_a1(int32_t m) const {
        const int64_t a = m - lo_ + 1;
        return a * (a + 1) / 2;
    }
    int64_t cells_a2(int32_t m) const {
        const int64_t b = hi_ - m;
        return b * (b + 1) / 2;
    }
    int64_t cells_r(int32_t m) const {
        return static_cast<int64_t>(m - lo_ + 1) * (hi_ - m);
    }

private:
    int32_t lo_;
    int32_t hi_;
    double sumsq_ = 0.0;
    std::vector<double> u_; // u_[k] = triangle sum of the first k window bins
    std::vector<double> v_; // v_[k] = sum of rows lo..lo+k-1 out to hi
};

} // namespace tadscan
