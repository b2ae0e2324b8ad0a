#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "synforge/bitmatrix.hpp"
#include "synforge/rng.hpp"

using namespace synforge;

namespace {

// Independent rank oracle: naive elimination over an int matrix.
size_t rank_oracle(std::vector<std::vector<int>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && !m[piv][c]) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c])
                for (size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

std::vector<std::vector<int>> to_ints(const BitMatrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols(), 0));
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c) ? 1 : 0;
    return out;
}

} // namespace

TEST_CASE("xor is componentwise sum mod 2") {
    CHECK((BitVec::from_string("1011") ^ BitVec::from_string("0110")).to_string() == "1101");
    BitVec v = BitVec::from_string("1011");
    CHECK((v ^ v).to_string() == "0000");
    CHECK((BitVec::from_string("0000") ^ v) == v);
    CHECK_THROWS_AS(BitVec::from_string("101") ^ BitVec::from_string("10"), DimensionError);
}

TEST_CASE("string round trip keeps position 0 leftmost") {
    BitVec v = BitVec::from_string("100100000000000000000000000000000000000000000000000000000000000001");
    CHECK(v.get(0));
    CHECK(v.get(3));
    CHECK(v.get(65));
    CHECK(v.weight() == 3);
    CHECK(BitVec::from_string(v.to_string()) == v);
    CHECK_THROWS_AS(BitVec::from_string("10a"), ValidationError);
}

TEST_CASE("masked_parity restricts to the mask support") {
    BitVec v = BitVec::from_string("1011");
    CHECK(masked_parity(v, BitVec::from_string("1111")) == 1);
    CHECK(masked_parity(v, BitVec::from_string("0000")) == 0);
    CHECK(masked_parity(v, BitVec::from_string("1010")) == 0);
    CHECK_THROWS_AS(masked_parity(v, BitVec::from_string("10")), DimensionError);
}

TEST_CASE("masked_parity is linear in the mask") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        size_t n = 1 + rand_below(rng, 200);
        BitVec v = BitVec::random(n, rng());
        BitVec m1 = BitVec::random(n, rng());
        BitVec m2 = BitVec::random(n, rng());
        CHECK((masked_parity(v, m1) ^ masked_parity(v, m2)) == masked_parity(v, m1 ^ m2));
    }
}

TEST_CASE("rank of small matrices") {
    CHECK(BitMatrix::identity(3).rank() == 3);
    CHECK(BitMatrix::from_strings({"11", "11"}).rank() == 1);
    // standard Hamming(7,4) generator
    BitMatrix g = BitMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"});
    CHECK(g.rank() == 4);
    CHECK(g.rank() == rank_oracle(to_ints(g)));
}

TEST_CASE("rank is invariant under row permutation and row addition") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 100; ++it) {
        size_t rows = 2 + rand_below(rng, 6), cols = 2 + rand_below(rng, 10);
        std::vector<BitVec> r;
        for (size_t i = 0; i < rows; ++i) r.push_back(BitVec::random(cols, rng()));
        BitMatrix m = BitMatrix::from_rows(r);
        size_t base = m.rank();
        CHECK(base == rank_oracle(to_ints(m)));

        fisher_yates(r, rng);
        CHECK(BitMatrix::from_rows(r).rank() == base);

        size_t a = rand_below(rng, rows), b = rand_below(rng, rows);
        if (a != b) {
            r[a] ^= r[b];
            CHECK(BitMatrix::from_rows(r).rank() == base);
        }
    }
}

TEST_CASE("solve returns a particular solution and the kernel") {
    SUBCASE("identity") {
        auto sol = BitMatrix::identity(3).solve(BitVec::from_string("101"));
        REQUIRE(sol.consistent);
        CHECK(sol.particular.to_string() == "101");
        CHECK(sol.kernel.empty());
    }
    SUBCASE("zero matrix, zero rhs") {
        auto sol = BitMatrix(2, 3).solve(BitVec::from_string("00"));
        REQUIRE(sol.consistent);
        CHECK(sol.particular.is_zero());
        CHECK(sol.kernel.size() == 3);
    }
    SUBCASE("zero matrix, odd rhs is inconsistent") {
        auto sol = BitMatrix(2, 3).solve(BitVec::from_string("01"));
        CHECK_FALSE(sol.consistent);
    }
    SUBCASE("random systems: solution solves, kernel is null") {
        std::mt19937_64 rng(33);
        for (int it = 0; it < 100; ++it) {
            size_t rows = 1 + rand_below(rng, 8), cols = 1 + rand_below(rng, 8);
            BitMatrix m(rows, cols);
            for (size_t r = 0; r < rows; ++r) m.row(r) = BitVec::random(cols, rng());
            BitVec b = BitVec::random(rows, rng());
            auto sol = m.solve(b);
            if (sol.consistent) CHECK(m.mul(sol.particular) == b);
            for (const auto& k : sol.kernel) CHECK(m.mul(k).is_zero());
            CHECK(sol.kernel.size() == cols - m.rank());
        }
    }
}

TEST_CASE("random_full_rank hits rank m for every seed") {
    CHECK(BitMatrix::random_full_rank(1, 1, 5).get(0, 0));
    CHECK(BitMatrix::random_full_rank(2, 4, 7).rank() == 2);
    CHECK(BitMatrix::random_full_rank(4, 4, 1).rank() == 4);
    CHECK_THROWS_AS(BitMatrix::random_full_rank(3, 2, 1), DimensionError);
    for (uint64_t seed = 0; seed < 100; ++seed)
        CHECK(BitMatrix::random_full_rank(6, 9, seed).rank() == 6);
    // deterministic per seed
    CHECK(BitMatrix::random_full_rank(5, 40, 123) == BitMatrix::random_full_rank(5, 40, 123));
}

TEST_CASE("mul and mul_omp agree bit for bit") {
    std::mt19937_64 rng(44);
    for (int it = 0; it < 30; ++it) {
        size_t rows = 1 + rand_below(rng, 300), cols = 1 + rand_below(rng, 500);
        BitMatrix m(rows, cols);
        for (size_t r = 0; r < rows; ++r) m.row(r) = BitVec::random(cols, rng());
        BitVec x = BitVec::random(cols, rng());
        CHECK(m.mul(x) == m.mul_omp(x));
    }
}

TEST_CASE("transpose and row_space_contains") {
    BitMatrix g = BitMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"});
    CHECK(g.transposed().transposed() == g);
    CHECK(g.row_space_contains(g.row(0) ^ g.row(2)));
    // weight-1 vectors are never Hamming codewords (minimum distance 3)
    CHECK_FALSE(g.row_space_contains(BitVec::from_string("1000000")));
}
