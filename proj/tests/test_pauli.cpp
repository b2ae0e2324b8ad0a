#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "synforge/pauli.hpp"
#include "synforge/rng.hpp"

using namespace synforge;

namespace {

PauliOp op(std::string_view s) { return PauliOp::from_string(s); }

// All nonzero Z-type (or X-type) operators on n qubits.
std::vector<PauliOp> all_of_type(size_t n, CssType t) {
    std::vector<PauliOp> out;
    for (uint64_t m = 1; m < (uint64_t(1) << n); ++m) {
        BitVec mask(n);
        for (size_t i = 0; i < n; ++i)
            if ((m >> i) & 1) mask.set(i, true);
        out.push_back(t == CssType::z_type ? PauliOp::z_with_support(mask)
                                           : PauliOp::x_with_support(mask));
    }
    return out;
}

// Does deleting exactly this subset leave all remaining pairs commuting?
bool deletion_clears(const StabilizerSet& s, const std::vector<size_t>& removed) {
    std::vector<bool> gone(s.ops.size(), false);
    for (size_t i : removed) gone[i] = true;
    for (size_t i = 0; i < s.ops.size(); ++i)
        for (size_t j = i + 1; j < s.ops.size(); ++j)
            if (!gone[i] && !gone[j] && !commutes(s.ops[i], s.ops[j])) return false;
    return true;
}

} // namespace

TEST_CASE("pauli string round trip") {
    CHECK(op("ZIZ").to_string() == "ZIZ");
    CHECK(op("IXYZ").to_string() == "IXYZ");
    CHECK_THROWS_AS(op("ZIW"), ValidationError);
    CHECK(op("ZIZ").z_mask.to_string() == "101");
    CHECK(op("ZIZ").x_mask.is_zero());
}

TEST_CASE("commutation via the symplectic product") {
    CHECK_FALSE(commutes(op("ZI"), op("XI")));
    CHECK(commutes(op("ZZ"), op("XX"))); // two anticommuting sites cancel mod 2
    CHECK(commutes(op("ZI"), op("IZ")));
    CHECK(commutes(op("YY"), op("YY")));
    CHECK_THROWS_AS(commutes(op("Z"), op("ZZ")), DimensionError);
}

TEST_CASE("commutes is symmetric") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 300; ++it) {
        size_t n = 1 + rand_below(rng, 12);
        PauliOp p(BitVec::random(n, rng()), BitVec::random(n, rng()));
        PauliOp q(BitVec::random(n, rng()), BitVec::random(n, rng()));
        CHECK(commutes(p, q) == commutes(q, p));
    }
}

TEST_CASE("css classification is total") {
    CHECK(css_type(op("ZIZ")) == CssType::z_type);
    CHECK(css_type(op("IXI")) == CssType::x_type);
    CHECK(css_type(op("YII")) == CssType::mixed);
    CHECK(css_type(op("ZIX")) == CssType::mixed);
    CHECK(css_type(op("III")) == CssType::identity);
}

TEST_CASE("same-type operators always commute") {
    for (size_t n = 1; n <= 6; ++n) {
        auto zs = all_of_type(n, CssType::z_type);
        auto xs = all_of_type(n, CssType::x_type);
        for (const auto& a : zs)
            for (const auto& b : zs) CHECK(commutes(a, b));
        for (const auto& a : xs)
            for (const auto& b : xs) CHECK(commutes(a, b));
    }
}

TEST_CASE("single-site Z anticommutes with any X operator covering the site") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 200; ++it) {
        size_t n = 1 + rand_below(rng, 16);
        BitVec support = BitVec::random(n, rng());
        if (support.is_zero()) continue;
        PauliOp q = PauliOp::x_with_support(support);
        for (size_t i = 0; i < n; ++i) {
            if (!support.get(i)) continue;
            BitVec zi(n);
            zi.set(i, true);
            CHECK_FALSE(commutes(PauliOp::z_with_support(zi), q));
        }
    }
}

TEST_CASE("analyze_set reports types and the anticommutation graph") {
    SUBCASE("single Z pair") {
        auto rep = analyze_set({{op("ZZ")}});
        CHECK(rep.all_css_like);
        CHECK(rep.anticommuting_pairs.empty());
    }
    SUBCASE("conflicting singletons") {
        auto rep = analyze_set({{op("ZI"), op("XI")}});
        REQUIRE(rep.anticommuting_pairs.size() == 1);
        CHECK(rep.anticommuting_pairs[0] == std::pair<size_t, size_t>{0, 1});
    }
    SUBCASE("mixed operators are flagged") {
        auto rep = analyze_set({{op("YI")}});
        CHECK_FALSE(rep.all_css_like);
    }
}

TEST_CASE("find_noncommuting_set on the small exemplars") {
    SUBCASE("lone local conflict") {
        auto r = find_noncommuting_set({{op("ZII"), op("XXI")}});
        CHECK(r.removed == std::vector<size_t>{0});
        CHECK(r.feasible);
        CHECK(r.minimal_certified);
    }
    SUBCASE("already locally commuting") {
        auto r = find_noncommuting_set({{op("ZZ"), op("XX")}});
        CHECK(r.removed.empty());
        CHECK(r.r() == 0);
    }
    SUBCASE("three operators, one conflict") {
        // Z3 vs X1X3 anticommute at site 3; Z1Z3 vs X1X3 overlap at two sites.
        auto r = find_noncommuting_set({{op("IIZ"), op("XIX"), op("ZIZ")}});
        CHECK(r.removed == std::vector<size_t>{0});
    }
    SUBCASE("three operators, two conflicts") {
        // X1X3 also anticommutes with Z1Z2 (single shared site), so both
        // Z operators must go.
        auto r = find_noncommuting_set({{op("IIZ"), op("XIX"), op("ZZI")}});
        CHECK(r.removed == std::vector<size_t>{0, 2});
    }
    SUBCASE("mixed operator rejected") {
        CHECK_THROWS_AS(find_noncommuting_set({{op("YI"), op("XI")}}), ClassificationError);
    }
}

TEST_CASE("returned set clears conflicts and no strict subset does") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 150; ++it) {
        size_t n = 2 + rand_below(rng, 5);
        size_t count = 2 + rand_below(rng, 8); // |s| <= 10: exhaustive subset audit
        StabilizerSet s;
        for (size_t i = 0; i < count; ++i) {
            BitVec mask = BitVec::random(n, rng());
            if (mask.is_zero()) mask.set(rand_below(rng, n), true);
            s.ops.push_back(rand_bit(rng) ? PauliOp::z_with_support(mask)
                                          : PauliOp::x_with_support(mask));
        }
        auto r = find_noncommuting_set(s);
        REQUIRE(r.feasible);
        CHECK(deletion_clears(s, r.removed));
        // minimality: dropping any one member must restore a conflict
        for (size_t skip = 0; skip < r.removed.size(); ++skip) {
            std::vector<size_t> sub;
            for (size_t k = 0; k < r.removed.size(); ++k)
                if (k != skip) sub.push_back(r.removed[k]);
            CHECK_FALSE(deletion_clears(s, sub));
        }
    }
}

TEST_CASE("greedy fallback beyond 20 candidates stays valid") {
    std::mt19937_64 rng(10);
    StabilizerSet s;
    size_t n = 8;
    for (size_t i = 0; i < 25; ++i) {
        BitVec mask = BitVec::random(n, rng());
        if (mask.is_zero()) mask.set(0, true);
        s.ops.push_back(PauliOp::z_with_support(mask));
    }
    for (size_t i = 0; i < 6; ++i) {
        BitVec mask = BitVec::random(n, rng());
        if (mask.is_zero()) mask.set(1, true);
        s.ops.push_back(PauliOp::x_with_support(mask));
    }
    auto r = find_noncommuting_set(s);
    CHECK(r.feasible);
    CHECK_FALSE(r.minimal_certified);
    CHECK(deletion_clears(s, r.removed));
}
