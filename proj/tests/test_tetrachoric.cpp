#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "owent/tetrachoric.hpp"

TEST_CASE("xy series against reference values") {
    CHECK(std::fabs(owent::phi2_tetrachoric_xy(1.0, -0.5, 0.3).value - 0.28313842024448095212) <= 1e-15);
    CHECK(std::fabs(owent::phi2_tetrachoric_xy(-0.7, 1.9, 0.1).value - 0.23692354635637312389) <= 1e-15);
    CHECK(std::fabs(owent::phi2_tetrachoric_xy(-1.2, 0.4, -0.8).value - 0.0090911095786686264409) <= 1e-15);
    CHECK(std::fabs(owent::phi2_tetrachoric_xy(0.0, 0.0, 0.5).value - 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("h0 series, plain and accelerated") {
    const double want = 0.49984043123897740856;
    const double rho = std::numbers::sqrt2 / 2;
    CHECK(std::fabs(owent::phi2_tetrachoric_h0(2.1, rho, false).value - want) <= 1e-15);
    CHECK(std::fabs(owent::phi2_tetrachoric_h0(2.1, rho, true).value - want) <= 1e-15);
    const auto slow = owent::phi2_tetrachoric_h0(1.0, 0.995, false);
    const auto fast = owent::phi2_tetrachoric_h0(1.0, 0.995, true);
    CHECK(slow.slow);
    CHECK(!fast.slow);
    CHECK(fast.iterations < slow.iterations);
    // the plain series cancels heavily this close to 1
    CHECK(std::fabs(slow.value - fast.value) <= 5e-14);
}

TEST_CASE("T from the tetrachoric series") {
    CHECK(std::fabs(owent::owen_t_tetrachoric(0.5, 0.25, false).value - 0.034320217127094209633) <= 1e-16);
    CHECK(std::fabs(owent::owen_t_tetrachoric(1.0, 4.0, true).value - 0.07932721798121157248) <= 2e-16);
    CHECK(std::fabs(owent::owen_t_tetrachoric(0.1, 10.0, true).value - 0.22679969643349899416) <= 2e-16);
    CHECK(owent::owen_t_tetrachoric(1.0, 0.0, true).value == 0.0);
}

TEST_CASE("rho range and eps") {
    CHECK_THROWS_AS(owent::phi2_tetrachoric_xy(0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(owent::phi2_tetrachoric_h0(0.0, -1.0, true), std::domain_error);
    const auto coarse = owent::phi2_tetrachoric_xy(0.3, 0.2, 0.6, 1e-8);
    const auto fine = owent::phi2_tetrachoric_xy(0.3, 0.2, 0.6);
    CHECK(coarse.iterations < fine.iterations);
    CHECK(std::fabs(coarse.value - fine.value) <= 1e-7);
}

TEST_CASE("Hermite pairs") {
    auto s = owent::HermiteEvenSeq<double>::start(2.0);
    s.advance();  // He_2 = x^2 - 1, He_3 = x^3 - 3x
    CHECK(s.even == 3.0);
    CHECK(s.odd == 2.0);
}
