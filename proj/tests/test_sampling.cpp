#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include <sublat/sampling.hpp>

using namespace sublat;

TEST_CASE("theory sizes are ceil(12 |B| (ln|B| + t))") {
    CHECK(plan_size_theory(1, 4.0) == 48);
    CHECK(plan_size_theory(10, 4.0) == 757);
    CHECK(plan_size_theory(100, 4.0) == 10327); // ceil(1200 (ln 100 + 4))
    CHECK_THROWS_AS(plan_size_theory(0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(plan_size_theory(5, 0.0), std::invalid_argument);
}

TEST_CASE("practice sizes are ceil(sqrt(n) ln n) and the half variant") {
    CHECK(plan_size_practice(55) == 30);
    CHECK(plan_size_practice(2) == 1);
    CHECK(plan_size_practice_half(55) == 15);
    CHECK(plan_size_practice(4099) == 533);
}

TEST_CASE("full draws enumerate every node once") {
    SubsamplePlan plan;
    plan.mode = SubsampleMode::Full;
    const SubsampleIndex idx = draw(plan, 9, 1);
    REQUIRE(idx.size() == 9);
    CHECK(idx.is_full());
    for (std::uint64_t i = 0; i < 9; ++i) CHECK(idx.entries[i] == i);
}

TEST_CASE("random draws are sorted, in range, seeded, and may repeat") {
    SubsamplePlan plan;
    plan.mode = SubsampleMode::Practice;
    plan.seed = 77;
    const std::uint64_t n = 1031;
    const SubsampleIndex a = draw(plan, n, 1);
    const SubsampleIndex b = draw(plan, n, 1);
    CHECK(a.entries == b.entries);
    CHECK(a.size() == plan_size_practice(n));
    CHECK(std::is_sorted(a.entries.begin(), a.entries.end()));
    for (std::uint64_t e : a.entries) CHECK(e < n);

    plan.seed = 78;
    const SubsampleIndex c = draw(plan, n, 1);
    CHECK(a.entries != c.entries);
}

TEST_CASE("size override wins and caps at n") {
    SubsamplePlan plan;
    plan.mode = SubsampleMode::Practice;
    plan.seed = 5;
    plan.size_override = 7;
    CHECK(draw(plan, 100, 1).size() == 7);

    plan.size_override = 1000000; // far beyond n, draw must cap
    CHECK(draw(plan, 100, 1).size() == 100);
}

TEST_CASE("theory draws size off the frequency set cardinality") {
    SubsamplePlan plan;
    plan.mode = SubsampleMode::Theory;
    plan.t = 4.0;
    plan.seed = 3;
    const SubsampleIndex idx = draw(plan, 100000, 10);
    CHECK(idx.size() == 757);
}

TEST_CASE("oversampling sandwich holds for theory-sized draws") {
    for (std::uint64_t b : {1ULL, 3ULL, 10ULL, 100ULL, 1000ULL, 100000ULL}) {
        const std::uint64_t j = plan_size_theory(b, 4.0);
        INFO("|B| = " << b << " |J| = " << j);
        CHECK(jb_sandwich_check(b, j, 4.0));
    }
}

TEST_CASE("subsample io round trips") {
    SubsamplePlan plan;
    plan.mode = SubsampleMode::Practice;
    plan.seed = 12;
    const SubsampleIndex idx = draw(plan, 521, 1);
    std::stringstream ss;
    write_subsample(ss, idx);
    const SubsampleIndex back = read_subsample(ss);
    CHECK(back.n == idx.n);
    CHECK(back.seed == idx.seed);
    CHECK(back.entries == idx.entries);
}

TEST_CASE("subsample io rejects out-of-range entries") {
    std::stringstream ss("2 5 0\n3\n7\n");
    CHECK_THROWS_AS(read_subsample(ss), std::runtime_error);
}
