#include <catch_amalgamated.hpp>

#include <numbers>

#include <sublat/zeta.hpp>

using namespace sublat;
using Catch::Matchers::WithinRel;

TEST_CASE("even integer arguments hit the closed forms") {
    const double pi = std::numbers::pi;
    CHECK_THAT(riemann_zeta(2.0), WithinRel(pi * pi / 6.0, 1e-15));
    CHECK_THAT(riemann_zeta(4.0), WithinRel(std::pow(pi, 4) / 90.0, 1e-15));
    CHECK_THAT(riemann_zeta(6.0), WithinRel(std::pow(pi, 6) / 945.0, 1e-15));
    CHECK_THAT(riemann_zeta(8.0), WithinRel(std::pow(pi, 8) / 9450.0, 1e-15));
    CHECK_THAT(riemann_zeta(12.0), WithinRel(691.0 * std::pow(pi, 12) / 638512875.0, 1e-15));
}

// Reference values computed with 30-digit arithmetic.
TEST_CASE("general arguments agree with high-precision references") {
    CHECK_THAT(riemann_zeta(3.0), WithinRel(1.2020569031595942854, 1e-12));
    CHECK_THAT(riemann_zeta(5.0), WithinRel(1.0369277551433699263, 1e-12));
    CHECK_THAT(riemann_zeta(2.5), WithinRel(1.3414872572509171798, 1e-12));
    CHECK_THAT(riemann_zeta(1.5), WithinRel(2.6123753486854883433, 1e-12));
    CHECK_THAT(riemann_zeta(14.0), WithinRel(1.0000612481350587048, 1e-12));
}

TEST_CASE("arguments at or below one are rejected") {
    CHECK_THROWS_AS(riemann_zeta(1.0), std::invalid_argument);
    CHECK_THROWS_AS(riemann_zeta(0.5), std::invalid_argument);
    CHECK_THROWS_AS(riemann_zeta(-2.0), std::invalid_argument);
}

TEST_CASE("zeta decreases towards one on s > 1") {
    CHECK(riemann_zeta(1.1) > riemann_zeta(2.0));
    CHECK(riemann_zeta(2.0) > riemann_zeta(3.0));
    CHECK(riemann_zeta(20.0) > 1.0);
    CHECK(riemann_zeta(20.0) < 1.0001);
}
