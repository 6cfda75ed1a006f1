#include "tadscan/contact_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tadscan {

namespace {

bool nearly_equal(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-6 * scale;
}

} // namespace

ContactMatrix::ContactMatrix(int32_t n, int64_t resolution, std::vector<Entry> entries,
                             std::string chrom)
    : n_(n), resolution_(resolution), chrom_(std::move(chrom)) {
    if (n <= 0) throw std::invalid_argument("ContactMatrix: bin count must be positive");
    if (resolution <= 0) throw std::invalid_argument("ContactMatrix: resolution must be positive");

    for (auto& e : entries) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i < 1 || e.j > n) throw std::invalid_argument("ContactMatrix: entry outside 1..n");
        if (!std::isfinite(e.value)) throw std::invalid_argument("ContactMatrix: non-finite count");
        if (e.value < 0.0) throw std::invalid_argument("ContactMatrix: negative count");
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    rows_.assign(n + 1, Row{});
    cols_.assign(n + 1, Col{});
    for (size_t k = 0; k < entries.size(); ++k) {
        const Entry& e = entries[k];
        if (e.value == 0.0) continue;
        if (k > 0 && entries[k - 1].i == e.i && entries[k - 1].j == e.j) {
            // mirrored duplicate from a symmetric listing
            if (!nearly_equal(entries[k - 1].value, e.value))
                throw std::invalid_argument("ContactMatrix: conflicting duplicate entry");
            continue;
        }
        rows_[e.i].cols.push_back(e.j);
        rows_[e.i].cum.push_back(e.value);
        cols_[e.j].rows.push_back(e.i);
        cols_[e.j].cum.push_back(e.value);
        ++nnz_;
    }
    for (int32_t i = 1; i <= n; ++i) {
        auto& r = rows_[i];
        r.cumsq.resize(r.cum.size() + 1);
        r.cumsq[0] = 0.0;
        double acc = 0.0;
        for (size_t k = 0; k < r.cum.size(); ++k) {
            const double v = r.cum[k];
            r.cumsq[k + 1] = r.cumsq[k] + v * v;
            acc += v;
            r.cum[k] = acc;
        }
        r.cum.insert(r.cum.begin(), 0.0);
        auto& c = cols_[i];
        double cacc = 0.0;
        for (auto& v : c.cum) {
            cacc += v;
            v = cacc;
        }
        c.cum.insert(c.cum.begin(), 0.0);
    }
}

double ContactMatrix::value(int32_t i, int32_t j) const {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n_) throw std::out_of_range("ContactMatrix::value: index outside 1..n");
    const auto& r = rows_[i];
    const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), j);
    if (it == r.cols.end() || *it != j) return 0.0;
    const size_t k = static_cast<size_t>(it - r.cols.begin());
    return r.cum[k + 1] - r.cum[k];
}

ContactMatrix::RangeMoments ContactMatrix::row_range(int32_t i, int32_t jlo, int32_t jhi) const {
    RangeMoments out;
    const auto& r = rows_[i];
    const auto b = std::lower_bound(r.cols.begin(), r.cols.end(), jlo) - r.cols.begin();
    const auto e = std::upper_bound(r.cols.begin(), r.cols.end(), jhi) - r.cols.begin();
    out.sum = r.cum[e] - r.cum[b];
    out.sumsq = r.cumsq[e] - r.cumsq[b];
    out.count = e - b;
    return out;
}

double ContactMatrix::col_range_up(int32_t j, int32_t ilo) const {
    const auto& c = cols_[j];
    const auto b = std::lower_bound(c.rows.begin(), c.rows.end(), ilo) - c.rows.begin();
    return c.cum[c.rows.size()] - c.cum[b];
}

std::vector<Entry> ContactMatrix::entries() const {
    std::vector<Entry> out;
    out.reserve(static_cast<size_t>(nnz_));
    for (int32_t i = 1; i <= n_; ++i) {
        const auto& r = rows_[i];
        for (size_t k = 0; k < r.cols.size(); ++k) {
            out.push_back({i, r.cols[k], r.cum[k + 1] - r.cum[k]});
        }
    }
    return out;
}

void ContactMatrix::write_dense(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    std::vector<std::vector<double>> grid(n_ + 1, std::vector<double>(n_ + 1, 0.0));
    for (const auto& e : entries()) {
        grid[e.i][e.j] = e.value;
        grid[e.j][e.i] = e.value;
    }
    char buf[64];
    for (int32_t i = 1; i <= n_; ++i) {
        for (int32_t j = 1; j <= n_; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", grid[i][j]);
            out << buf << (j == n_ ? '\n' : '\t');
        }
    }
}

void ContactMatrix::write_triplet(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "# bin_i\tbin_j\tcount\n";
    char buf[64];
    for (const auto& e : entries()) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        out << e.i << '\t' << e.j << '\t' << buf << '\n';
    }
}

namespace {

ContactMatrix load_dense(const std::string& path, int64_t resolution, const std::string& chrom) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> grid;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (!ss.eof()) throw std::runtime_error(path + ": non-numeric token in dense matrix");
        if (!row.empty()) grid.push_back(std::move(row));
    }
    const size_t n = grid.size();
    if (n == 0) throw std::runtime_error(path + ": matrix has no entries");
    for (const auto& row : grid) {
        if (row.size() != n) throw std::runtime_error(path + ": dense matrix is not square");
    }
    std::vector<Entry> entries;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            const double a = grid[i][j];
            const double b = grid[j][i];
            if (!nearly_equal(a, b)) throw std::runtime_error(path + ": dense matrix is not symmetric");
            if (a < 0.0) throw std::runtime_error(path + ": negative count");
            if (a != 0.0) {
                entries.push_back({static_cast<int32_t>(i + 1), static_cast<int32_t>(j + 1), a});
            }
        }
    }
    if (entries.empty()) throw std::runtime_error(path + ": matrix has no entries");
    return ContactMatrix(static_cast<int32_t>(n), resolution, std::move(entries), chrom);
}

ContactMatrix load_triplet(const std::string& path, int64_t resolution, const std::string& chrom) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    struct Raw {
        int64_t a, b;
        double v;
    };
    std::vector<Raw> raw;
    int64_t max_pos = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        Raw r{};
        if (!(ss >> r.a >> r.b >> r.v)) throw std::runtime_error(path + ": malformed triplet line");
        if (r.a < 0 || r.b < 0) throw std::runtime_error(path + ": negative position");
        if (r.v < 0.0) throw std::runtime_error(path + ": negative count");
        max_pos = std::max({max_pos, r.a, r.b});
        raw.push_back(r);
    }
    if (raw.empty()) throw std::runtime_error(path + ": matrix has no entries");

    // Positions are genomic coordinates when reading them as bin indices
    // would imply vastly more bins than the resolution suggests.
    const int64_t bins_if_genomic = max_pos / resolution + 1;
    const bool genomic = max_pos >= resolution && max_pos > 10 * bins_if_genomic;

    std::vector<Entry> entries;
    entries.reserve(raw.size());
    int64_t max_bin = 0;
    for (const auto& r : raw) {
        int64_t bi, bj;
        if (genomic) {
            if (r.a % resolution != 0 || r.b % resolution != 0)
                throw std::runtime_error(path + ": genomic coordinate not divisible by resolution");
            bi = r.a / resolution + 1;
            bj = r.b / resolution + 1;
        } else {
            if (r.a == 0 || r.b == 0) throw std::runtime_error(path + ": bin indices are 1-based");
            bi = r.a;
            bj = r.b;
        }
        max_bin = std::max({max_bin, bi, bj});
        entries.push_back({static_cast<int32_t>(bi), static_cast<int32_t>(bj), r.v});
    }
    return ContactMatrix(static_cast<int32_t>(max_bin), resolution, std::move(entries), chrom);
}

} // namespace

ContactMatrix load_matrix(const std::string& path, MatrixFormat format, int64_t resolution,
                          const std::string& chrom) {
    if (resolution <= 0) throw std::invalid_argument("load_matrix: resolution must be positive");
    return format == MatrixFormat::dense ? load_dense(path, resolution, chrom)
                                         : load_triplet(path, resolution, chrom);
}

RegionSums::RegionSums(const ContactMatrix& m, int32_t lo, int32_t hi) : lo_(lo), hi_(hi) {
    if (lo < 1 || hi > m.n() || lo >= hi)
        throw std::invalid_argument("RegionSums: need 1 <= lo < hi <= n");
    const int32_t t = hi - lo + 1;
    u_.assign(t + 1, 0.0);
    v_.assign(t + 1, 0.0);
    for (int32_t k = 1; k <= t; ++k) {
        const int32_t bin = lo + k - 1;
        u_[k] = u_[k - 1] + m.col_range_up(bin, lo);
        const auto rm = m.row_range(bin, bin, hi);
        v_[k] = v_[k - 1] + rm.sum;
        sumsq_ += rm.sumsq;
    }
}

} // namespace tadscan
