#include <catch_amalgamated.hpp>

#include <sstream>

#include <sublat/lattice.hpp>

using namespace sublat;
using Catch::Matchers::WithinRel;

TEST_CASE("lattice points are k z / n mod 1") {
    const Lattice lat{55, {1, 21}};
    const std::vector<double> x2 = lattice_point(lat, 2);
    CHECK_THAT(x2[0], WithinRel(2.0 / 55.0, 1e-15));
    CHECK_THAT(x2[1], WithinRel(42.0 / 55.0, 1e-15));
    const std::vector<double> x3 = lattice_point(lat, 3);
    CHECK_THAT(x3[1], WithinRel(8.0 / 55.0, 1e-15)); // 63 mod 55
    CHECK(lattice_point(lat, 0) == std::vector<double>{0.0, 0.0});
    CHECK_THROWS_AS(lattice_point(lat, 55), std::invalid_argument);
}

TEST_CASE("all points enumerate in index order") {
    const Lattice lat{5, {1, 2}};
    const auto pts = lattice_points(lat);
    REQUIRE(pts.size() == 5);
    CHECK_THAT(pts[3][0], WithinRel(3.0 / 5.0, 1e-15));
    CHECK_THAT(pts[3][1], WithinRel(1.0 / 5.0, 1e-15)); // 6 mod 5
}

TEST_CASE("validation rejects malformed lattices") {
    CHECK_THROWS_AS(validate(Lattice{0, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Lattice{5, {}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Lattice{5, {5}}), std::invalid_argument); // z not reduced
    CHECK_NOTHROW(validate(Lattice{5, {0, 4}}));
}

TEST_CASE("totient counts units") {
    CHECK(totient(1) == 1);
    CHECK(totient(2) == 1);
    CHECK(totient(12) == 4);
    CHECK(totient(55) == 40);
    CHECK(totient(257) == 256);
    CHECK(totient(131101) == 131100);
}

TEST_CASE("lattice io round trips bit-exactly") {
    const Lattice lat{131101, {1, 35462}};
    std::stringstream ss;
    write_lattice(ss, lat);
    const Lattice back = read_lattice(ss);
    CHECK(back.n == lat.n);
    CHECK(back.z == lat.z);
}

TEST_CASE("lattice io rejects junk") {
    std::stringstream ss("hello");
    CHECK_THROWS_AS(read_lattice(ss), std::runtime_error);
    std::stringstream truncated("5 2\n1\n");
    CHECK_THROWS_AS(read_lattice(truncated), std::runtime_error);
}
