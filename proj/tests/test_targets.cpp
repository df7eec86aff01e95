#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <sublat/rng.hpp>
#include <sublat/targets.hpp>

using namespace sublat;

TEST_CASE("kink takes its normalized peak value at the center") {
    for (int d = 1; d <= 3; ++d) {
        const KinkFunction f(d);
        CHECK(f.dimension() == d);
        const std::vector<double> mid(static_cast<std::size_t>(d), 0.5);
        const double expected = std::pow(std::pow(5.0, -0.25) * 15.0 / (4.0 * std::sqrt(3.0)),
                                         static_cast<double>(d));
        CHECK(f(mid) == Catch::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("kink vanishes outside its support box") {
    const KinkFunction f(2);
    CHECK(f({0.95, 0.5}) == 0.0);
    CHECK(f({0.5, 0.02}) == 0.0);
    CHECK(f({0.0, 0.0}) == 0.0);
    // support is |x_j - 1/2| < 1/sqrt(5) in every coordinate
    CHECK(f({0.5 + 0.44, 0.5}) > 0.0);
    CHECK(f({0.5 + 0.45, 0.5}) == 0.0);
}

TEST_CASE("kink is symmetric about the center") {
    const KinkFunction f(2);
    RngStream rng(3);
    for (int i = 0; i < 20; ++i) {
        const double a = 0.5 * rng.real01();
        const double b = 0.5 * rng.real01();
        CHECK(f({0.5 + a, 0.5 + b}) == Catch::Approx(f({0.5 - a, 0.5 - b})));
    }
}

TEST_CASE("kink validates dimensions") {
    CHECK_THROWS_AS(KinkFunction(0), std::invalid_argument);
    CHECK_THROWS_AS(KinkFunction(-3), std::invalid_argument);
    const KinkFunction f(2);
    CHECK_THROWS_AS(f({0.5}), std::invalid_argument);
    CHECK_THROWS_AS(f({0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("reciprocal target matches hand values") {
    const ReciprocalFunction f(1, 6.0);
    CHECK(f({0.0}) == 1.0);
    // sin(2 pi / 4) = 1, so f(1/4) = 1 / (1 + 1/2)
    CHECK(f({0.25}) == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(f({0.75}) == Catch::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("reciprocal target stays positive and bounded") {
    const int d = 3;
    const double q = 2.5;
    const ReciprocalFunction f(d, q);
    CHECK(f.dimension() == d);
    double c = 0.0;
    for (int j = 1; j <= d; ++j) c += 0.5 * std::pow(static_cast<double>(j), -q);
    REQUIRE(c < 1.0);
    RngStream rng(9);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> x = {rng.real01(), rng.real01(), rng.real01()};
        const double v = f(x);
        CHECK(v > 1.0 / (1.0 + c) - 1e-12);
        CHECK(v < 1.0 / (1.0 - c) + 1e-12);
    }
}

TEST_CASE("reciprocal target accepts the experiment dimensions") {
    CHECK_NOTHROW(ReciprocalFunction(100, 6.0));
    CHECK_NOTHROW(ReciprocalFunction(100, 2.5));
}

TEST_CASE("reciprocal target rejects a vanishing denominator") {
    // d = 2, q = 0: the coefficient sum reaches exactly one
    CHECK_THROWS_AS(ReciprocalFunction(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ReciprocalFunction(0, 6.0), std::invalid_argument);
    const ReciprocalFunction f(2, 6.0);
    CHECK_THROWS_AS(f({0.5}), std::invalid_argument);
}
