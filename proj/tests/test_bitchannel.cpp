#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wiretap/bitchannel.hpp"
#include "wiretap/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace wiretap;
using doctest::Approx;

TEST_CASE("arikan recursion small cases") {
    auto p0 = arikan_recursion(Bec(0.37), 0);
    CHECK(p0.n == 1);
    CHECK(p0.erasure[0] == Approx(0.37));

    auto p1 = arikan_recursion(Bec(0.5), 1);
    CHECK(p1.erasure[0] == Approx(0.75).epsilon(1e-15));
    CHECK(p1.erasure[1] == Approx(0.25).epsilon(1e-15));

    auto p2 = arikan_recursion(Bec(0.5), 2);
    CHECK(p2.erasure[0] == Approx(0.9375).epsilon(1e-15));
    CHECK(p2.erasure[1] == Approx(0.5625).epsilon(1e-15));
    CHECK(p2.erasure[2] == Approx(0.4375).epsilon(1e-15));
    CHECK(p2.erasure[3] == Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("arikan recursion boundary fixed points") {
    for (int m : {1, 3, 6}) {
        auto zeros = arikan_recursion(Bec(0.0), m);
        auto ones = arikan_recursion(Bec(1.0), m);
        for (double e : zeros.erasure) CHECK(e == 0.0);
        for (double e : ones.erasure) CHECK(e == 1.0);
    }
}

TEST_CASE("recursion conserves capacity and degrades monotonically") {
    for (int m : {1, 4, 8}) {
        int n = 1 << m;
        auto lo = arikan_recursion(Bec(0.3), m);
        auto hi = arikan_recursion(Bec(0.45), m);
        double sum_lo = 0.0;
        for (double e : lo.erasure) sum_lo += 1.0 - e;
        CHECK(sum_lo == Approx(n * 0.7).epsilon(1e-9));
        for (int i = 0; i < n; ++i)
            CHECK(lo.erasure[size_t(i)] <= hi.erasure[size_t(i)] + 1e-12);
    }
}

TEST_CASE("kernel recursion") {
    auto single = kernel_recursion({KernelSpec::g2()}, Bec(0.4));
    CHECK(single.erasure[0] == Approx(2 * 0.4 - 0.16).epsilon(1e-15));
    CHECK(single.erasure[1] == Approx(0.16).epsilon(1e-15));

    auto twice = kernel_recursion({KernelSpec::g2(), KernelSpec::g2()}, Bec(0.5));
    auto ref = arikan_recursion(Bec(0.5), 2);
    for (int i = 0; i < 4; ++i)
        CHECK(twice.erasure[size_t(i)] == Approx(ref.erasure[size_t(i)]).epsilon(1e-15));

    auto zero = kernel_recursion({KernelSpec::g2(), KernelSpec::g2()}, Bec(0.0));
    for (double e : zero.erasure) CHECK(e == 0.0);

    CHECK_THROWS_AS(kernel_recursion({}, Bec(0.5)), std::invalid_argument);
}

TEST_CASE("kernel recursion conserves capacity through arbitrary stacks") {
    KernelSpec k4 = KernelSpec::from_matrix(random_invertible(4, 7), "k4");
    KernelSpec k3 = KernelSpec::from_matrix(random_invertible(3, 2), "k3");
    for (double q : {0.2, 0.5, 0.8}) {
        auto p = kernel_recursion({k4, KernelSpec::g2(), k3}, Bec(q));
        CHECK(p.n == 24);
        double sum = 0.0;
        for (double e : p.erasure) sum += 1.0 - e;
        CHECK(sum == Approx(24 * (1.0 - q)).epsilon(1e-9));
    }
}

TEST_CASE("exhaustive profile equals the recursions on polar codes") {
    for (int m : {1, 2, 3, 4}) {
        for (double q : {0.1, 0.3, 0.5}) {
            auto ex = exhaustive_profile(polar_transform(m), Bec(q));
            auto rec = arikan_recursion(Bec(q), m);
            std::vector<KernelSpec> ks(size_t(m), KernelSpec::g2());
            auto kr = kernel_recursion(ks, Bec(q));
            for (int i = 0; i < (1 << m); ++i) {
                CHECK(ex.erasure[size_t(i)] ==
                      Approx(rec.erasure[size_t(i)]).epsilon(1e-9));
                CHECK(kr.erasure[size_t(i)] ==
                      Approx(rec.erasure[size_t(i)]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("exhaustive profile on the identity transform") {
    auto p = exhaustive_profile(BinMatrix::identity(5), Bec(0.35));
    for (double e : p.erasure) CHECK(e == Approx(0.35).epsilon(1e-12));
}

TEST_CASE("exhaustive profile conserves capacity for any invertible transform") {
    BinMatrix g = random_invertible(10, 123);
    auto p = exhaustive_profile(g, Bec(0.5));
    double sum = 0.0;
    for (double e : p.erasure) sum += 1.0 - e;
    CHECK(sum == Approx(10 * 0.5).epsilon(1e-9));
}

TEST_CASE("exhaustive profile rejects large blocklengths") {
    CHECK_THROWS_AS(exhaustive_profile(BinMatrix::identity(21), Bec(0.5)),
                    std::invalid_argument);
}

TEST_CASE("exhaustive profile degrades monotonically for a generic transform") {
    BinMatrix g = random_invertible(8, 321);
    auto lo = exhaustive_profile(g, Bec(0.2));
    auto hi = exhaustive_profile(g, Bec(0.6));
    for (int i = 0; i < 8; ++i)
        CHECK(lo.erasure[size_t(i)] <= hi.erasure[size_t(i)] + 1e-12);
}

TEST_CASE("mc profile: exact at the boundary and near truth elsewhere") {
    CodeConstruction c = polar_transform(6);
    auto zero = mc_profile(c, Bec(0.0), 500, 1);
    for (double e : zero.erasure) CHECK(e == 0.0);
    auto one = mc_profile(c, Bec(1.0), 500, 1);
    for (double e : one.erasure) CHECK(e == 1.0);

    auto ident = mc_profile(BinMatrix::identity(16), Bec(0.3), 100000, 5);
    for (double e : ident.erasure) CHECK(e == Approx(0.3).epsilon(0.05));

    auto mc = mc_profile(c, Bec(0.3), 20000, 9);
    auto exact = arikan_recursion(Bec(0.3), 6);
    for (int i = 0; i < 64; ++i)
        CHECK(std::abs(mc.erasure[size_t(i)] - exact.erasure[size_t(i)]) < 0.025);
    CHECK(mc.samples == 20000);
    CHECK(mc.method == ProfileMethod::monte_carlo);
    for (int i = 0; i < 64; ++i) {
        double e = mc.erasure[size_t(i)];
        CHECK(mc.std_err[size_t(i)] ==
              Approx(std::sqrt(e * (1 - e) / 20000.0)).epsilon(1e-12));
    }
}

TEST_CASE("mc profile is invariant to the thread count") {
    CodeConstruction c = rl_transform(48, 11);
    auto t1 = mc_profile(c, Bec(0.4), 6000, 42, 1);
    auto t3 = mc_profile(c, Bec(0.4), 6000, 42, 3);
    auto t8 = mc_profile(c, Bec(0.4), 6000, 42, 8);
    CHECK(t1.erasure == t3.erasure);
    CHECK(t1.erasure == t8.erasure);
    // and different seeds genuinely differ
    auto other = mc_profile(c, Bec(0.4), 6000, 43, 1);
    CHECK(t1.erasure != other.erasure);
}

TEST_CASE("permuted profile with the identity order matches mc_profile exactly") {
    CodeConstruction c = polar_transform(5);
    std::vector<int> ident(32);
    for (int i = 0; i < 32; ++i) ident[size_t(i)] = i;
    auto a = mc_profile(c, Bec(0.35), 4000, 7);
    auto b = permuted_profile(c, ident, Bec(0.35), 4000, 7);
    CHECK(a.erasure == b.erasure);
}

TEST_CASE("permuted profile: reversal on a diagonal system stays flat") {
    CodeConstruction c;
    c.n = 8;
    c.family = Family::rl;
    c.transform = BinMatrix::identity(8);
    std::vector<int> rev{7, 6, 5, 4, 3, 2, 1, 0};
    auto p = permuted_exhaustive_profile(c, rev, Bec(0.3));
    for (double e : p.erasure) CHECK(e == Approx(0.3).epsilon(1e-12));
}

TEST_CASE("permuted exhaustive matches permuted monte-carlo") {
    CodeConstruction c = polar_transform(3);
    // frozen-first order with the strongest channels last
    std::vector<int> order{0, 1, 2, 4, 3, 5, 6, 7};
    auto exact = permuted_exhaustive_profile(c, order, Bec(0.5));
    auto mc = permuted_profile(c, order, Bec(0.5), 100000, 12345);
    for (int i = 0; i < 8; ++i) {
        double se = std::max(mc.std_err[size_t(i)], 1e-4);
        CHECK(std::abs(mc.erasure[size_t(i)] - exact.erasure[size_t(i)]) < 3 * se);
    }
}

TEST_CASE("profile derived metrics") {
    auto p = arikan_recursion(Bec(0.3), 1);
    CHECK(p.tvd(0) == Approx(1.0 - p.erasure[0]));
    CHECK(p.bhattacharyya(0) == Approx(p.erasure[0]));
    CHECK(p.capacity(1) == Approx(1.0 - p.erasure[1]));
}
