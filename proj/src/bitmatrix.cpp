#include "synforge/bitmatrix.hpp"

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace synforge {

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows) {
    BitMatrix m;
    if (!rows.empty()) {
        m.cols_ = rows[0].size();
        for (const auto& r : rows)
            if (r.size() != m.cols_) throw DimensionError("matrix rows have unequal lengths");
    }
    m.row_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitVec> v;
    v.reserve(rows.size());
    for (auto s : rows) v.push_back(BitVec::from_string(s));
    return from_rows(std::move(v));
}

void BitMatrix::append_row(BitVec r) {
    if (row_.empty())
        cols_ = r.size();
    else if (r.size() != cols_)
        throw DimensionError("appended row has wrong length");
    row_.push_back(std::move(r));
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows());
    for (size_t r = 0; r < rows(); ++r)
        for (size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

size_t BitMatrix::rank() const {
    return rref().rows.size();
}

BitMatrix::Rref BitMatrix::rref() const {
    std::vector<BitVec> work(row_);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < work.size(); ++c) {
        size_t piv = r;
        while (piv < work.size() && !work[piv].get(c)) ++piv;
        if (piv == work.size()) continue;
        std::swap(work[r], work[piv]);
        for (size_t i = 0; i < work.size(); ++i)
            if (i != r && work[i].get(c)) work[i] ^= work[r];
        pivots.push_back(c);
        ++r;
    }
    work.resize(r, BitVec(cols_));
    Rref out;
    out.rows = std::move(work);
    out.pivot_cols = std::move(pivots);
    return out;
}

BitMatrix::Solution BitMatrix::solve(const BitVec& b) const {
    if (b.size() != rows()) throw DimensionError("solve: rhs length != row count");

    // Eliminate on [M | b].
    std::vector<BitVec> work(row_);
    BitVec rhs = b;
    std::vector<size_t> pivot_col;
    std::vector<size_t> pivot_row;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < work.size(); ++c) {
        size_t piv = r;
        while (piv < work.size() && !work[piv].get(c)) ++piv;
        if (piv == work.size()) continue;
        std::swap(work[r], work[piv]);
        {
            bool t = rhs.get(r);
            rhs.set(r, rhs.get(piv));
            rhs.set(piv, t);
        }
        for (size_t i = 0; i < work.size(); ++i) {
            if (i != r && work[i].get(c)) {
                work[i] ^= work[r];
                rhs.set(i, rhs.get(i) ^ rhs.get(r));
            }
        }
        pivot_col.push_back(c);
        pivot_row.push_back(r);
        ++r;
    }

    Solution sol;
    sol.consistent = true;
    for (size_t i = r; i < work.size(); ++i) {
        if (rhs.get(i) && work[i].is_zero()) {
            sol.consistent = false;
            break;
        }
    }

    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivot_col) is_pivot[c] = true;

    if (sol.consistent) {
        sol.particular = BitVec(cols_);
        for (size_t k = 0; k < pivot_col.size(); ++k)
            sol.particular.set(pivot_col[k], rhs.get(pivot_row[k]));
    }

    // One kernel basis vector per free column.
    for (size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        BitVec k(cols_);
        k.set(c, true);
        for (size_t j = 0; j < pivot_col.size(); ++j)
            if (work[pivot_row[j]].get(c)) k.set(pivot_col[j], true);
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

bool BitMatrix::row_space_contains(const BitVec& v) const {
    if (v.size() != cols_) throw DimensionError("row_space_contains: length mismatch");
    BitMatrix aug = *this;
    aug.append_row(v);
    return aug.rank() == rank();
}

BitMatrix BitMatrix::random_full_rank(size_t m, size_t n, uint64_t seed) {
    if (m > n) throw DimensionError("random_full_rank: m > n");
    std::mt19937_64 rng(seed);
    for (;;) {
        BitMatrix mat(m, n);
        for (size_t r = 0; r < m; ++r) {
            auto w = mat.row(r).words();
            for (auto& word : w) word = rng();
            if (n % 64) w[w.size() - 1] &= (uint64_t(1) << (n % 64)) - 1;
        }
        if (mat.rank() == m) return mat;
    }
}

BitVec BitMatrix::mul(const BitVec& x) const {
    if (x.size() != cols_) throw DimensionError("mul: vector length != column count");
    BitVec y(rows());
    for (size_t i = 0; i < rows(); ++i)
        if (masked_parity(x, row_[i])) y.set(i, true);
    return y;
}

BitVec BitMatrix::mul_omp(const BitVec& x) const {
    if (x.size() != cols_) throw DimensionError("mul: vector length != column count");
    const long m = static_cast<long>(rows());
    std::vector<unsigned char> bits(m, 0);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) bits[i] = masked_parity(x, row_[i]) ? 1 : 0;
    BitVec y(rows());
    for (long i = 0; i < m; ++i)
        if (bits[i]) y.set(i, true);
    return y;
}

} // namespace synforge
