#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphrelu/cutoff.hpp"

using namespace sphrelu;

TEST_CASE("zeta pointwise values and support") {
    CHECK(zeta(0.4) == 0.0);
    CHECK(zeta(0.5) == 0.0);
    CHECK(zeta(1.0) == 1.0);
    CHECK(zeta(2.0) == 0.0);
    CHECK(zeta(2.3) == 0.0);
    CHECK(zeta(0.75) + zeta(1.5) == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i <= 4000; ++i) {
        const double t = 3.0 * i / 4000;
        CHECK(zeta(t) >= 0.0);
        if (t < 0.5 || t > 2.0) CHECK(zeta(t) == 0.0);
    }
    // partition identity on the overlap window
    for (int i = 0; i <= 1000; ++i) {
        const double t = 0.5 + 0.5 * i / 1000;
        CHECK(zeta(t) + zeta(2.0 * t) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("zeta is strictly positive on the core interval") {
    const double c1 = zeta_core_minimum();
    CHECK(c1 > 0.0);
    for (int i = 0; i <= 2000; ++i) {
        const double t = 0.6 + (5.0 / 3.0 - 0.6) * i / 2000;
        CHECK(zeta(t) >= c1 * (1.0 - 1e-12));
    }
}

TEST_CASE("zeta is smooth and unimodal") {
    // bounded second differences on a 1e-3 grid
    for (int i = 1; i < 3000; ++i) {
        const double t = 3.0 * i / 3000;
        CHECK(std::abs(zeta_derivative(t, 2)) < 200.0);
    }
    // one sign change of the first difference (rise then fall)
    int changes = 0;
    double prev = zeta(0.40);
    int sign = 1;
    for (int i = 1; i <= 2400; ++i) {
        const double t = 0.4 + (2.2 - 0.4) * i / 2400;
        const double v = zeta(t);
        const double diff = v - prev;
        if (std::abs(diff) > 1e-13) {
            const int s = diff > 0 ? 1 : -1;
            if (s != sign) {
                ++changes;
                sign = s;
            }
        }
        prev = v;
    }
    CHECK(changes <= 1);
}

TEST_CASE("dyadic partition telescopes to one") {
    CHECK(partition_check(1, 4) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(partition_check(777, 12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(partition_check(1 << 10, 12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(partition_check(1024, 5), std::invalid_argument);
    CHECK_THROWS_AS(partition_check(0, 10), std::invalid_argument);
}

TEST_CASE("phi support and change of variables") {
    const SphereDim d2(2);
    const ActivationOrder k1(1);
    CHECK(phi_eval(5, d2, k1, 0.1) == 0.0);

    for (int k : {0, 1, 2}) {
        const ActivationOrder order(k);
        for (int q : {2, 5, 8}) {
            for (int m = 0; m <= 3 * (1 << q); ++m) {
                const int j = 2 * m + order.parity_offset();
                const double value =
                    phi_eval(q, d2, order, std::ldexp(static_cast<double>(m), -q));
                CHECK(value >= 0.0);
                if (j < (1 << q) / 2 || j > 2 * (1 << q)) CHECK(value == 0.0);
                if (j > order.k) {
                    const double expect = zeta(std::ldexp(static_cast<double>(j), -q)) *
                                          xi_eval(d2, order, j);
                    CHECK(value == doctest::Approx(expect).epsilon(1e-14));
                }
            }
        }
    }
}

TEST_CASE("phi is positive inside the cutoff core") {
    // q=5, k=1: the degree 2m = 48 puts the cutoff argument at 1.5
    const SphereDim d2(2);
    CHECK(phi_eval(5, d2, ActivationOrder(1), 24.0 / 32.0) > 0.0);
    CHECK(phi_eval(5, d2, ActivationOrder(1), 16.0 / 32.0) > 0.0);
}

TEST_CASE("phi guard for xi arguments at or below k") {
    const SphereDim d2(2);
    // k = 2, q = 0, m = 0: degree 2*0+1 = 1 <= k, defined as zero
    CHECK(phi_eval(0, d2, ActivationOrder(2), 0.0) == 0.0);
    CHECK(phi_eval(1, d2, ActivationOrder(3), 0.5) == 0.0);
    CHECK_THROWS_AS(phi_eval(-1, d2, ActivationOrder(1), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(phi_eval(2, d2, ActivationOrder(1), -0.25), std::invalid_argument);
}

TEST_CASE("dyadic consistency: the block symbols resum to xi") {
    const SphereDim d2(2);
    for (int k : {0, 1, 2}) {
        const ActivationOrder order(k);
        for (int m = 1; m <= 300; ++m) {
            const int j = 2 * m + order.parity_offset();
            if (j <= k) continue;
            double s = 0.0;
            for (int q = 0; q <= 14; ++q)
                s += phi_eval(q, d2, order, std::ldexp(static_cast<double>(m), -q));
            CHECK(s == doctest::Approx(xi_eval(d2, order, j)).epsilon(1e-12));
        }
    }
}
