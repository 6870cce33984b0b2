#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphrelu/activation.hpp"

using namespace sphrelu;

TEST_CASE("index set membership") {
    CHECK_FALSE(index_set_member(ActivationOrder(1), 3));
    CHECK(index_set_member(ActivationOrder(1), 0));
    CHECK_FALSE(index_set_member(ActivationOrder(0), 4));
    CHECK(index_set_member(ActivationOrder(0), 7));
    CHECK(index_set_member(ActivationOrder(2), 5));
    CHECK_FALSE(index_set_member(ActivationOrder(2), 4));
    CHECK(index_set_member(ActivationOrder(2), 2));
    CHECK(ActivationOrder(0).parity_offset() == 1);
    CHECK(ActivationOrder(1).parity_offset() == 0);
    CHECK(ActivationOrder(2).parity_offset() == 1);
}

TEST_CASE("quadrature coefficients at hand-checked values") {
    const SphereDim d2(2);
    CHECK(coeff_quadrature(d2, ActivationOrder(0), 0) == doctest::Approx(0.5));
    CHECK(coeff_quadrature(d2, ActivationOrder(1), 1) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    // excluded parity vanishes under the exact rule
    CHECK(std::abs(coeff_quadrature(SphereDim(3), ActivationOrder(2), 4)) <= 1e-14);
    CHECK(std::abs(coeff_quadrature(d2, ActivationOrder(1), 3)) <= 1e-14);
}

TEST_CASE("closed form against the quadrature oracle") {
    for (int d : {2, 3, 4}) {
        for (int k : {0, 1, 2}) {
            const SphereDim dim(d);
            const ActivationOrder order(k);
            for (int m = k + 1; m <= 60; ++m) {
                if (!index_set_member(order, m)) {
                    CHECK(coeff_closed_form(dim, order, m) == 0.0);
                    continue;
                }
                const double cf = coeff_closed_form(dim, order, m);
                const double cq = coeff_quadrature(dim, order, m);
                CHECK(cf == doctest::Approx(cq).epsilon(1e-8));
            }
        }
    }
    CHECK(coeff_closed_form(SphereDim(2), ActivationOrder(1), 3) == 0.0);
    CHECK(coeff_closed_form(SphereDim(2), ActivationOrder(0), 1) ==
          doctest::Approx(coeff_quadrature(SphereDim(2), ActivationOrder(0), 1))
              .epsilon(1e-10));
    CHECK(coeff_closed_form(SphereDim(2), ActivationOrder(1), 2) ==
          doctest::Approx(coeff_quadrature(SphereDim(2), ActivationOrder(1), 2))
              .epsilon(1e-10));
    CHECK_THROWS_AS(coeff_closed_form(SphereDim(2), ActivationOrder(1), 1),
                    std::domain_error);
}

TEST_CASE("xi squares the coefficients on the index set") {
    for (int d : {2, 3, 4}) {
        for (int k : {0, 1, 2}) {
            const SphereDim dim(d);
            const ActivationOrder order(k);
            for (int m = k + 1; m <= 200; ++m) {
                if (!index_set_member(order, m)) continue;
                const double c = coeff_closed_form(dim, order, m);
                CHECK(xi_eval(dim, order, m) == doctest::Approx(c * c).epsilon(1e-10));
            }
        }
    }
    CHECK_THROWS_AS(xi_eval(SphereDim(2), ActivationOrder(1), 1.0),
                    std::invalid_argument);
}

TEST_CASE("xi asymptotics: t^{d+2k+1} xi(t) settles to a constant") {
    for (int k : {0, 1}) {
        const SphereDim dim(2);
        const ActivationOrder order(k);
        const double power = dim.d + 2.0 * k + 1.0;
        double lo = 1e300, hi = 0.0;
        for (double t = 64.0; t <= 4096.0; t *= 1.25) {
            const double v = xi_eval(dim, order, t) * std::pow(t, power);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi / lo - 1.0 <= 0.05);
        // Stirling-ratio prediction: Gamma(x+a)/Gamma(x+b) ~ x^{a-b}
        const double t = 4096.0;
        const double lg_pref = std::lgamma(0.5 * (dim.d + 1)) -
                               std::lgamma(0.5 * dim.d) - 0.5 * std::log(M_PI) +
                               std::lgamma(order.k + 1.0) + std::lgamma(0.5 * dim.d) -
                               (order.k + 1) * std::log(2.0) - 0.5 * std::log(M_PI);
        const double stirling =
            std::exp(2.0 * lg_pref) * std::pow(0.5 * t, -power);
        CHECK(xi_eval(dim, order, t) == doctest::Approx(stirling).epsilon(0.01));
    }
}

TEST_CASE("coefficient table structure") {
    const SphereDim d2(2);
    SUBCASE("k=1: zeros exactly at odd degrees >= 3") {
        CoefficientTable table = build_table(d2, ActivationOrder(1), 100);
        for (int m = 0; m <= 100; ++m) {
            if (m <= 1 || m % 2 == 0)
                CHECK(table.coeff[m] != 0.0);
            else
                CHECK(table.coeff[m] == 0.0);
        }
    }
    SUBCASE("k=0: support is {0} plus the odd degrees") {
        CoefficientTable table = build_table(d2, ActivationOrder(0), 50);
        for (int m = 0; m <= 50; ++m) {
            if (m == 0 || m % 2 == 1)
                CHECK(table.coeff[m] != 0.0);
            else
                CHECK(table.coeff[m] == 0.0);
        }
    }
    SUBCASE("signs alternate and magnitudes decrease along the index set") {
        for (int k : {0, 1, 2}) {
            CoefficientTable table = build_table(d2, ActivationOrder(k), 200);
            double prev_abs = 1e300;
            for (int m = k + 1; m <= 200; ++m) {
                if (!table.in_index_set(m)) continue;
                const int flips = ((m - k - 1) / 2) % 2;
                CHECK((table.coeff[m] > 0) == (flips == 0));
                if (m > k + 1) CHECK(std::abs(table.coeff[m]) < prev_abs);
                prev_abs = std::abs(table.coeff[m]);
            }
        }
    }
    SUBCASE("tail estimate is small next to the head") {
        CoefficientTable table = build_table(d2, ActivationOrder(1), 512);
        double head = 0.0;
        for (int m = 2; m <= 512; ++m) {
            if (!table.in_index_set(m)) continue;
            head += xi_eval(d2, ActivationOrder(1), m) *
                    static_cast<double>(harmonic_dim(d2, m));
        }
        CHECK(table.tail_estimate > 0.0);
        CHECK(table.tail_estimate < 1e-6 * head);
    }
    CHECK_THROWS_AS(build_table(d2, ActivationOrder(1), 2), std::invalid_argument);
    CHECK_THROWS_AS(build_table(d2, ActivationOrder(1), 9000), std::invalid_argument);
}

TEST_CASE("kernel trace converges like a power law") {
    const SphereDim d2(2);
    for (int k : {0, 1}) {
        const ActivationOrder order(k);
        // partial-sum increments of sum sigma_hat(m)^2 N(m) beyond m = 256
        // sit below a constant times m^{-2k-2}
        double constant = 0.0;
        for (int m = 257; m <= 2048; ++m) {
            if (!index_set_member(order, m)) continue;
            const double inc = xi_eval(d2, order, m) *
                               static_cast<double>(harmonic_dim(d2, m));
            constant = std::max(constant, inc * std::pow(double(m), 2.0 * k + 2.0));
        }
        for (int m = 257; m <= 2048; ++m) {
            if (!index_set_member(order, m)) continue;
            const double inc = xi_eval(d2, order, m) *
                               static_cast<double>(harmonic_dim(d2, m));
            CHECK(inc <= constant * std::pow(double(m), -2.0 * k - 2.0) * (1 + 1e-12));
        }
        CHECK(constant > 0.0);
    }
}
