#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wiretap/gf2.hpp"
#include "wiretap/rng.hpp"
#include "naive_gf2.hpp"

using namespace wiretap;

namespace {

BinMatrix g2_paper() { return BinMatrix::from_rows({"10", "11"}); }

ErasurePattern pattern_from_mask(int n, uint64_t mask) {
    ErasurePattern e(n);
    e.data()[0] = mask;
    return e;
}

BinMatrix random_invertible_small(int n, uint64_t seed) {
    for (uint64_t t = 0;; ++t) {
        BinMatrix m = naive::random_matrix(n, n, mix2(seed, t));
        if (rank(m) == n) return m;
    }
}

} // namespace

TEST_CASE("kron identities") {
    BinMatrix i2 = BinMatrix::identity(2);
    CHECK(kron(i2, i2) == BinMatrix::identity(4));

    BinMatrix expected = BinMatrix::from_rows(
        {"1000", "1100", "1010", "1111"});
    CHECK(kron(g2_paper(), g2_paper()) == expected);
}

TEST_CASE("kron rank is multiplicative") {
    for (uint64_t s = 0; s < 10; ++s) {
        BinMatrix a = naive::random_matrix(3, 3, mix2(11, s));
        BinMatrix b = naive::random_matrix(4, 4, mix2(22, s));
        CHECK(naive::rank(kron(a, b)) == naive::rank(a) * naive::rank(b));
        CHECK(rank(kron(a, b)) == naive::rank(kron(a, b)));
    }
}

TEST_CASE("kron is associative") {
    BinMatrix a = naive::random_matrix(2, 3, 1);
    BinMatrix b = naive::random_matrix(3, 2, 2);
    BinMatrix c = naive::random_matrix(2, 2, 3);
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
}

TEST_CASE("kron mixed-product property") {
    // shapes that conform: a 2x3, c 3x2; b 3x2, d 2x4
    BinMatrix a = naive::random_matrix(2, 3, 5);
    BinMatrix c = naive::random_matrix(3, 2, 6);
    BinMatrix b = naive::random_matrix(3, 2, 7);
    BinMatrix d = naive::random_matrix(2, 4, 8);
    CHECK(mul(kron(a, b), kron(c, d)) == kron(mul(a, c), mul(b, d)));
}

TEST_CASE("rank basics") {
    CHECK(rank(BinMatrix::identity(7)) == 7);
    CHECK(rank(BinMatrix(4, 4)) == 0);
    CHECK(rank(BinMatrix::from_rows({"10", "11", "01"})) == 2);
}

TEST_CASE("rank agrees with dense elimination on random matrices") {
    for (uint64_t s = 0; s < 50; ++s) {
        int rows = 1 + int(mix2(100, s) % 12);
        int cols = 1 + int(mix2(200, s) % 12);
        BinMatrix m = naive::random_matrix(rows, cols, s);
        CHECK(rank(m) == naive::rank(m));
    }
    // wide matrix crossing the word boundary
    BinMatrix wide = naive::random_matrix(40, 100, 999);
    CHECK(rank(wide) == naive::rank(wide));
}

TEST_CASE("is_invertible") {
    CHECK(is_invertible(BinMatrix::identity(5)));
    CHECK_FALSE(is_invertible(BinMatrix::from_rows({"11", "11"})));
    BinMatrix g8 = kron(kron(g2_paper(), g2_paper()), g2_paper());
    CHECK(is_invertible(g8));
    CHECK_THROWS_AS(is_invertible(BinMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("inverse round trip") {
    for (uint64_t s = 0; s < 10; ++s) {
        BinMatrix m = random_invertible_small(9, s);
        auto inv = inverse(m);
        REQUIRE(inv.has_value());
        CHECK(mul(m, *inv) == BinMatrix::identity(9));
        CHECK(mul(*inv, m) == BinMatrix::identity(9));
    }
    CHECK_FALSE(inverse(BinMatrix::from_rows({"11", "11"})).has_value());
}

TEST_CASE("random_invertible is deterministic and invertible") {
    CHECK(random_invertible(1, 3) == BinMatrix::from_rows({"1"}));
    CHECK(random_invertible(16, 42) == random_invertible(16, 42));
    CHECK(random_invertible(16, 42) != random_invertible(16, 43));
    for (uint64_t s = 0; s < 200; ++s)
        CHECK(rank(random_invertible(64, s)) == 64);
}

TEST_CASE("suffix profile: identity sees every bit") {
    int n = 6;
    auto prof = suffix_decodable_profile(BinMatrix::identity(n), ErasurePattern(n));
    for (int i = 0; i < n; ++i) CHECK(prof[size_t(i)]);
}

TEST_CASE("suffix profile on the 2x2 polar kernel") {
    BinMatrix g = BinMatrix::from_rows({"11", "01"});  // transpose of paper G2
    auto none = suffix_decodable_profile(g, pattern_from_mask(2, 0b00));
    CHECK(none == std::vector<bool>{true, true});
    auto first_erased = suffix_decodable_profile(g, pattern_from_mask(2, 0b01));
    CHECK(first_erased == std::vector<bool>{false, true});
    auto all_erased = suffix_decodable_profile(g, pattern_from_mask(2, 0b11));
    CHECK(all_erased == std::vector<bool>{false, false});
}

TEST_CASE("suffix profile rejects bad inputs") {
    CHECK_THROWS_AS(suffix_decodable_profile(BinMatrix(2, 3), ErasurePattern(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        suffix_decodable_profile(BinMatrix::from_rows({"11", "11"}), ErasurePattern(2)),
        std::invalid_argument);
}

TEST_CASE("suffix profile matches naive two-rank computation") {
    for (uint64_t s = 0; s < 100; ++s) {
        int n = 2 + int(mix2(5000, s) % 31);
        BinMatrix g = random_invertible_small(n, mix2(6000, s));
        ErasurePattern e = naive::random_pattern(n, 0.4, mix2(7000, s));
        CHECK(suffix_decodable_profile(g, e) == naive::suffix_profile(g, e));
    }
}

TEST_CASE("number of decodable bits equals rank of the unerased rows") {
    for (uint64_t s = 0; s < 30; ++s) {
        int n = 2 + int(mix2(1234, s) % 20);
        BinMatrix g = random_invertible_small(n, mix2(88, s));
        ErasurePattern e = naive::random_pattern(n, 0.5, mix2(99, s));
        auto prof = suffix_decodable_profile(g, e);
        int decodable = 0;
        for (bool b : prof) decodable += b;
        CHECK(decodable == naive::rank(naive::restrict_cols(g, e, 0)));
    }
}

TEST_CASE("all rows unerased means everything decodable") {
    for (uint64_t s = 0; s < 10; ++s) {
        int n = 2 + int(s % 10);
        BinMatrix g = random_invertible_small(n, mix2(321, s));
        auto prof = suffix_decodable_profile(g, ErasurePattern(n));
        for (int i = 0; i < n; ++i) CHECK(prof[size_t(i)]);
    }
}

TEST_CASE("engine matches the literal backward insertion") {
    for (uint64_t s = 0; s < 60; ++s) {
        int n = 2 + int(mix2(777, s) % 70);   // crosses the word boundary
        BinMatrix g = random_invertible_small(n, mix2(888, s));
        SuffixEngine engine(g);
        SuffixWorkspace ws = engine.make_workspace();
        BitVec und(n);
        // sweep densities so both engine sides get exercised
        double q = (s % 2) ? 0.15 : 0.75;
        ErasurePattern e = naive::random_pattern(n, q, mix2(555, s));
        engine.profile(e, ws, und);
        auto lit = suffix_decodable_profile(g, e);
        for (int i = 0; i < n; ++i) CHECK(und.get(i) == !lit[size_t(i)]);
    }
}

TEST_CASE("engine workspace is reusable across patterns") {
    int n = 33;
    BinMatrix g = random_invertible_small(n, 4242);
    SuffixEngine engine(g);
    SuffixWorkspace ws = engine.make_workspace();
    BitVec und(n);
    for (uint64_t s = 0; s < 40; ++s) {
        ErasurePattern e = naive::random_pattern(n, 0.3 + 0.4 * (s % 2), mix2(1, s));
        engine.profile(e, ws, und);
        auto lit = suffix_decodable_profile(g, e);
        for (int i = 0; i < n; ++i) CHECK(und.get(i) == !lit[size_t(i)]);
    }
}

TEST_CASE("active-set profile drops frozen interference") {
    // g = [[1,1],[0,1]]: with column 1 known, bit 0 only needs row 0
    BinMatrix g = BinMatrix::from_rows({"11", "01"});
    BitVec active(2);
    active.set(0, true);
    auto prof = suffix_decodable_profile_active(g, pattern_from_mask(2, 0b10), active);
    CHECK(prof == std::vector<bool>{true, false});
    // with everything active, bit 0 is lost when row 1 is erased
    BitVec all(2);
    all.set(0, true);
    all.set(1, true);
    auto full = suffix_decodable_profile_active(g, pattern_from_mask(2, 0b10), all);
    CHECK(full == std::vector<bool>{false, true});
}

TEST_CASE("mat_vec and permute_columns") {
    BinMatrix g = BinMatrix::from_rows({"110", "011", "001"});
    BitVec x(3);
    x.set(0, true);
    x.set(2, true);
    BitVec y = mat_vec(g, x);
    CHECK(y.get(0) == true);
    CHECK(y.get(1) == true);
    CHECK(y.get(2) == true);
    BinMatrix p = permute_columns(g, {2, 0, 1});
    CHECK(p == BinMatrix::from_rows({"011", "101", "100"}));
    CHECK_THROWS_AS(permute_columns(g, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("transpose and mul agree with dense math") {
    BinMatrix a = naive::random_matrix(5, 9, 31);
    CHECK(transpose(transpose(a)) == a);
    BinMatrix b = naive::random_matrix(9, 4, 32);
    BinMatrix ab = mul(a, b);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) {
            int acc = 0;
            for (int k = 0; k < 9; ++k) acc ^= a.get(i, k) & b.get(k, j);
            CHECK(ab.get(i, j) == bool(acc));
        }
}
