#pragma once

#include <initializer_list>
#include <string_view>
#include <vector>

#include "synforge/bitvec.hpp"

namespace synforge {

// Dense GF(2) matrix stored as packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), row_(rows, BitVec(cols)) {}

    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(std::vector<BitVec> rows);
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows);

    // m x n matrix of rank m, deterministic per seed; samples by rejection.
    static BitMatrix random_full_rank(size_t m, size_t n, uint64_t seed);

    size_t rows() const { return row_.size(); }
    size_t cols() const { return cols_; }
    const BitVec& row(size_t i) const { return row_[i]; }
    BitVec& row(size_t i) { return row_[i]; }

    bool get(size_t r, size_t c) const { return row_[r].get(c); }
    void set(size_t r, size_t c, bool v) { row_[r].set(c, v); }

    void append_row(BitVec r);
    BitMatrix transposed() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    // GF(2) row rank by elimination; the matrix is not modified.
    size_t rank() const;

    // Reduced row echelon form together with its pivot columns.
    struct Rref {
        std::vector<BitVec> rows;       // zero rows dropped
        std::vector<size_t> pivot_cols; // one per kept row, increasing
    };
    Rref rref() const;

    // One solution of M x = b when consistent, plus a basis of ker M.
    struct Solution {
        bool consistent = false;
        BitVec particular;           // valid only if consistent
        std::vector<BitVec> kernel;  // basis of the null space
    };
    Solution solve(const BitVec& b) const;

    bool row_space_contains(const BitVec& v) const;

    // y = M x over GF(2): y_i = parity(row_i & x). Serial reference.
    BitVec mul(const BitVec& x) const;
    // Same product with the row loop parallelized; bit-identical to mul().
    BitVec mul_omp(const BitVec& x) const;

private:
    size_t cols_ = 0;
    std::vector<BitVec> row_;
};

} // namespace synforge
