#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <sublat/frequency_set.hpp>
#include <sublat/rng.hpp>

using namespace sublat;

namespace {

double max_subset_gamma(const KorobovSpace& s) {
    double best = 1.0;
    for (unsigned mask = 0; mask < (1u << s.d); ++mask) {
        std::vector<int> u;
        for (int j = 0; j < s.d; ++j)
            if (mask & (1u << j)) u.push_back(j);
        best = std::max(best, weight_gamma(s.weights, u));
    }
    return best;
}

// box-scan oracle, no pruning: every h with r(h) <= M
std::vector<std::vector<std::int64_t>> brute_set(const KorobovSpace& s, double M) {
    const std::int64_t R = static_cast<std::int64_t>(
        std::ceil(std::pow(M * max_subset_gamma(s), 1.0 / (2.0 * s.alpha))));
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> h(static_cast<std::size_t>(s.d), -R);
    while (true) {
        double g = weight_gamma(s.weights, support(h));
        if (g > 0.0) {
            double q = 1.0;
            for (std::int64_t v : h)
                if (v != 0) q *= std::pow(static_cast<double>(v) * static_cast<double>(v), s.alpha);
            if (q <= M * g) out.push_back(h);
        }
        int j = 0;
        while (j < s.d && h[static_cast<std::size_t>(j)] == R) {
            h[static_cast<std::size_t>(j)] = -R;
            ++j;
        }
        if (j == s.d) break;
        ++h[static_cast<std::size_t>(j)];
    }
    return out;
}

std::vector<std::vector<std::int64_t>> sorted_copy(std::vector<std::vector<std::int64_t>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("enumeration matches the box-scan oracle") {
    struct Case {
        KorobovSpace space;
        double M;
    };
    const std::vector<Case> cases = {
        {{1, 1.0, unweighted_scheme(1)}, 4.0},
        {{2, 1.0, unweighted_scheme(2)}, 4.0},
        {{2, 1.0, product_scheme({0.5, 0.25})}, 30.0},
        {{3, 1.0, product_scheme({1.0, 0.5, 0.1})}, 25.0},
        {{2, 2.0, unweighted_scheme(2)}, 40.0},
        {{2, 1.5, product_scheme({0.9, 0.9})}, 12.0},
        {{3, 1.0, order_dependent_scheme({1.0, 1.0, 0.5, 0.1})}, 16.0},
        {{3, 1.0, pod_scheme({1.0, 1.0, 2.0, 6.0}, {1.0, 0.5, 0.25})}, 20.0},
    };
    for (const Case& c : cases) {
        const FrequencySet set = enumerate_set(c.space, c.M);
        const auto got = sorted_copy(set.indices);
        const auto want = sorted_copy(brute_set(c.space, c.M));
        INFO("d=" << c.space.d << " M=" << c.M);
        CHECK(got == want);
    }
}

TEST_CASE("growing weights still enumerate correctly") {
    // factorial order weights break downward closure: (1, h2) can be cheaper
    // than (0, h2); the enumeration must not prune those leaves away
    const KorobovSpace s{2, 1.0, pod_scheme({1.0, 1.0, 24.0}, {1.0, 1.0})};
    const double M = 5.0;
    const FrequencySet set = enumerate_set(s, M);
    const auto sorted = sorted_copy(set.indices);
    CHECK(sorted == sorted_copy(brute_set(s, M)));
    // r((3,1)) = 9/24 <= 5 is in even though its shrinkage (3,0) with r = 9 is out
    CHECK(std::binary_search(sorted.begin(), sorted.end(), std::vector<std::int64_t>{3, 1}));
    CHECK_FALSE(std::binary_search(sorted.begin(), sorted.end(), std::vector<std::int64_t>{3, 0}));
}

TEST_CASE("boundary members are kept") {
    const KorobovSpace s{2, 1.0, unweighted_scheme(2)};
    const FrequencySet set = enumerate_set(s, 4.0);
    CHECK(set.size() == 21); // 13 interior plus the eight r = 4 members
    const auto sorted = sorted_copy(set.indices);
    for (const std::vector<std::int64_t>& h :
         {std::vector<std::int64_t>{2, 1}, {1, 2}, {-2, 1}, {2, -1}, {-2, -1}, {-1, -2}}) {
        CHECK(std::binary_search(sorted.begin(), sorted.end(), h));
    }
}

TEST_CASE("one-dimensional sets are symmetric intervals") {
    const KorobovSpace s{1, 1.0, unweighted_scheme(1)};
    const FrequencySet set = enumerate_set(s, 4.0);
    CHECK(sorted_copy(set.indices) ==
          std::vector<std::vector<std::int64_t>>{{-2}, {-1}, {0}, {1}, {2}});
}

TEST_CASE("tiny radius gives an empty set") {
    const KorobovSpace s{1, 1.0, product_scheme({0.5})};
    const FrequencySet set = enumerate_set(s, 0.5); // r(0) = 1 > M
    CHECK(set.size() == 0);
    CHECK_THROWS_AS(enumerate_set(s, 0.0), std::invalid_argument);
}

TEST_CASE("members sort by max norm then lexicographically") {
    const KorobovSpace s{2, 1.0, unweighted_scheme(2)};
    const FrequencySet set = enumerate_set(s, 4.0);
    REQUIRE(set.size() > 0);
    CHECK(set.indices.front() == std::vector<std::int64_t>{0, 0});
    auto norm = [](const std::vector<std::int64_t>& h) {
        std::int64_t m = 0;
        for (std::int64_t v : h) m = std::max(m, std::abs(v));
        return m;
    };
    for (std::size_t i = 1; i < set.size(); ++i) {
        const auto a = norm(set.indices[i - 1]), b = norm(set.indices[i]);
        CHECK(a <= b);
        if (a == b) CHECK(set.indices[i - 1] < set.indices[i]);
    }
}

TEST_CASE("downward closure holds for product weights") {
    const KorobovSpace s{3, 1.0, product_scheme({1.0, 0.6, 0.3})};
    const FrequencySet set = enumerate_set(s, 50.0);
    const auto sorted = sorted_copy(set.indices);
    RngStream rng(99);
    for (const std::vector<std::int64_t>& h : set.indices) {
        // shrink one coordinate towards zero; the result must stay inside
        std::vector<std::int64_t> g = h;
        const std::size_t j = rng.below(3);
        if (g[j] > 0) --g[j];
        else if (g[j] < 0) ++g[j];
        CHECK(std::binary_search(sorted.begin(), sorted.end(), g));
    }
}

TEST_CASE("cardinality bounds sandwich the true size") {
    const KorobovSpace s{2, 1.0, product_scheme({0.5, 0.5})};
    for (double M : {2.0, 10.0, 60.0}) {
        const FrequencySet set = enumerate_set(s, M);
        const CardinalityBounds b = cardinality_bounds(s, M, 0.75);
        CHECK(b.lower <= static_cast<double>(set.size()));
        CHECK(static_cast<double>(set.size()) <= b.upper);
    }
}

TEST_CASE("tail bound decays as the radius grows") {
    const KorobovSpace s{2, 1.0, product_scheme({0.5, 0.5})};
    const double t1 = tail_bound(s, 10.0, 0.75);
    const double t2 = tail_bound(s, 100.0, 0.75);
    const double t3 = tail_bound(s, 1000.0, 0.75);
    CHECK(t1 > t2);
    CHECK(t2 > t3);
    CHECK(t3 > 0.0);
    CHECK_THROWS_AS(tail_bound(s, 10.0, 1.0), std::invalid_argument); // strict interval
    CHECK_THROWS_AS(tail_bound(s, 10.0, 0.5), std::invalid_argument);
}

TEST_CASE("residues are inner products with z mod n") {
    const Lattice lat{55, {1, 21}};
    FrequencySet set{2, 100.0, {{2, 1}, {0, 0}, {-1, 0}, {0, -1}}};
    const std::vector<std::uint64_t> res = residues(set, lat);
    REQUIRE(res.size() == 4);
    CHECK(res[0] == 23); // 2 + 21 = 23
    CHECK(res[1] == 0);
    CHECK(res[2] == 54); // -1 mod 55
    CHECK(res[3] == 34); // -21 mod 55
}

TEST_CASE("frequency set io round trips, with and without residues") {
    const KorobovSpace s{2, 1.0, unweighted_scheme(2)};
    const FrequencySet set = enumerate_set(s, 6.0);
    SECTION("plain") {
        std::stringstream ss;
        write_frequency_set(ss, set);
        const FrequencySet back = read_frequency_set(ss);
        CHECK(back.d == set.d);
        CHECK(back.M == set.M);
        CHECK(back.indices == set.indices);
    }
    SECTION("with residue column") {
        const Lattice lat{13, {1, 5}};
        const std::vector<std::uint64_t> res = residues(set, lat);
        std::stringstream ss;
        write_frequency_set(ss, set, &res);
        std::vector<std::uint64_t> res_back;
        const FrequencySet back = read_frequency_set(ss, &res_back);
        CHECK(back.indices == set.indices);
        CHECK(res_back == res);
    }
}
