#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wiretap/channel.hpp"

#include <cmath>

using namespace wiretap;
using doctest::Approx;

TEST_CASE("Dmc validation") {
    CHECK_THROWS_AS(Dmc(2, 2, {0.5, 0.4, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Dmc(2, 2, {1.5, -0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Bec(1.5), std::invalid_argument);
}

TEST_CASE("t_information on the BEC") {
    // T(W, uniform) = 1 - p
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
        Dmc w = bec_to_dmc(Bec(p));
        CHECK(t_information(w, {0.5, 0.5}) == Approx(1.0 - p).epsilon(1e-12));
    }
}

TEST_CASE("t_information vanishes for a point-mass input") {
    Dmc w = bsc(0.2);
    CHECK(t_information(w, {1.0, 0.0}) == Approx(0.0));
    Dmc e = bec_to_dmc(Bec(0.4));
    CHECK(t_information(e, {0.0, 1.0}) == Approx(0.0));
}

TEST_CASE("t_information on BSC(0.1) at uniform input") {
    // four-term sum of |p(x,y) - 1/4|
    CHECK(t_information(bsc(0.1), {0.5, 0.5}) == Approx(0.8).epsilon(1e-12));
}

TEST_CASE("t_information rejects a non-distribution") {
    CHECK_THROWS_AS(t_information(bsc(0.1), {0.6, 0.6}), std::invalid_argument);
}

TEST_CASE("tvd_of_channel") {
    CHECK(tvd_of_channel(bec_to_dmc(Bec(0.3)), true) == Approx(0.7).epsilon(1e-12));
    CHECK(tvd_of_channel(bsc(0.5), true) == Approx(0.0));
    // grid mode agrees with the uniform-input value for a symmetric channel
    double grid = tvd_of_channel(bsc(0.1), false, 101);
    CHECK(grid == Approx(0.8).epsilon(1e-6));
}

TEST_CASE("uniform input maximizes T on symmetric channels") {
    for (double p : {0.1, 0.35, 0.6}) {
        Dmc w = bec_to_dmc(Bec(p));
        double at_uniform = t_information(w, {0.5, 0.5});
        for (int k = 0; k <= 100; ++k) {
            double a = k / 100.0;
            CHECK(t_information(w, {a, 1.0 - a}) <= at_uniform + 1e-9);
        }
    }
    for (double q : {0.05, 0.25, 0.45}) {
        Dmc w = bsc(q);
        double at_uniform = t_information(w, {0.5, 0.5});
        for (int k = 0; k <= 100; ++k) {
            double a = k / 100.0;
            CHECK(t_information(w, {a, 1.0 - a}) <= at_uniform + 1e-9);
        }
    }
}

TEST_CASE("bhattacharyya") {
    CHECK(bhattacharyya(bec_to_dmc(Bec(0.3))) == Approx(0.3).epsilon(1e-12));
    CHECK(bhattacharyya(bsc(0.1)) == Approx(0.6).epsilon(1e-12));
    CHECK(bhattacharyya(bsc(0.0)) == Approx(0.0));
    Dmc three(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    CHECK_THROWS_AS(bhattacharyya(three), std::invalid_argument);
}

TEST_CASE("capacity_uniform") {
    CHECK(capacity_uniform(bec_to_dmc(Bec(0.25))) == Approx(0.75).epsilon(1e-12));
    CHECK(capacity_uniform(bsc(0.5)) == Approx(0.0));
    double h01 = -0.1 * std::log2(0.1) - 0.9 * std::log2(0.9);
    CHECK(capacity_uniform(bsc(0.1)) == Approx(1.0 - h01).epsilon(1e-12));
}

TEST_CASE("degrade") {
    Dmc w = bsc(0.1);
    Dmc id(2, 2, {1, 0, 0, 1});
    Dmc same = degrade(w, id);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(same.w(x, y) == Approx(w.w(x, y)));

    // BSC(a) then BSC(b) = BSC(a + b - 2ab)
    Dmc q = degrade(bsc(0.1), bsc(0.2));
    double c = 0.1 + 0.2 - 2 * 0.1 * 0.2;
    CHECK(q.w(0, 1) == Approx(c).epsilon(1e-12));
    CHECK(q.w(1, 0) == Approx(c).epsilon(1e-12));

    // BEC(pb) then erasure post-processing BEC(p0) = BEC(pb + (1-pb) p0)
    double pb = 0.2, p0 = 0.25;
    Dmc cascade = degrade(bec_to_dmc(Bec(pb)), bec_extension(p0));
    Dmc expect = bec_to_dmc(Bec(pb + (1 - pb) * p0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y)
            CHECK(cascade.w(x, y) == Approx(expect.w(x, y)).epsilon(1e-12));

    CHECK_THROWS_AS(degrade(bec_to_dmc(Bec(0.1)), bsc(0.1)), std::invalid_argument);
}

TEST_CASE("degradation never increases T or capacity") {
    std::vector<double> p0s{0.1, 0.4, 0.9};
    for (double pb : {0.05, 0.3}) {
        Dmc w = bec_to_dmc(Bec(pb));
        for (double p0 : p0s) {
            Dmc q = degrade(w, bec_extension(p0));
            CHECK(capacity_uniform(q) <= capacity_uniform(w) + 1e-12);
            // T(Q, p_X) <= T(W, p_X) for every input distribution
            for (int k = 1; k < 50; ++k) {
                double a = k / 50.0;
                CHECK(t_information(q, {a, 1 - a}) <=
                      t_information(w, {a, 1 - a}) + 1e-12);
            }
        }
    }
}

TEST_CASE("bec_metrics closed forms") {
    auto m0 = bec_metrics(Bec(0.0));
    CHECK(m0.tvd == 1.0);
    CHECK(m0.bhattacharyya == 0.0);
    CHECK(m0.capacity == 1.0);
    auto m1 = bec_metrics(Bec(1.0));
    CHECK(m1.tvd == 0.0);
    CHECK(m1.bhattacharyya == 1.0);
    CHECK(m1.capacity == 0.0);
    auto m = bec_metrics(Bec(0.3));
    CHECK(m.tvd == Approx(0.7));
    CHECK(m.bhattacharyya == Approx(0.3));
    CHECK(m.capacity == Approx(0.7));
}

TEST_CASE("sandwich C <= T <= sqrt(1 - Z^2)") {
    for (int k = 0; k <= 20; ++k) {
        double p = k / 20.0;
        Dmc w = bec_to_dmc(Bec(p));
        double c = capacity_uniform(w);
        double t = tvd_of_channel(w, true);
        double z = bhattacharyya(w);
        CHECK(c <= t + 1e-12);
        CHECK(t <= std::sqrt(1.0 - z * z) + 1e-12);
    }
    for (int k = 0; k <= 20; ++k) {
        double q = 0.5 * k / 20.0;
        Dmc w = bsc(q);
        double c = capacity_uniform(w);
        double t = tvd_of_channel(w, true);
        double z = bhattacharyya(w);
        CHECK(c <= t + 1e-12);
        CHECK(t <= std::sqrt(1.0 - z * z) + 1e-12);
        // tight on the upper side for the BSC
        CHECK(t == Approx(std::sqrt(1.0 - z * z)).epsilon(1e-9));
        CHECK(t == Approx(1.0 - 2 * q).epsilon(1e-9));
    }
}

TEST_CASE("bec as dmc is consistent with the closed forms") {
    for (double p : {0.0, 0.2, 0.55, 1.0}) {
        Dmc w = bec_to_dmc(Bec(p));
        auto m = bec_metrics(Bec(p));
        CHECK(tvd_of_channel(w, true) == Approx(m.tvd).epsilon(1e-12));
        CHECK(bhattacharyya(w) == Approx(m.bhattacharyya).epsilon(1e-12));
        CHECK(capacity_uniform(w) == Approx(m.capacity).epsilon(1e-12));
    }
}
