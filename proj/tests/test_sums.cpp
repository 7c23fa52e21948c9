#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "excsing/sums.hpp"

using namespace excsing;

namespace {

// independent oracle: enumerate all count combinations directly
std::set<std::int64_t> brute_force_sums(const DimensionProfile& p) {
    std::set<std::int64_t> out{0};
    for (auto [dim, mult] : p.entries) {
        std::set<std::int64_t> next;
        for (std::int64_t s : out)
            for (std::int64_t c = 0; c <= mult; ++c) next.insert(s + c * dim);
        out = std::move(next);
    }
    return out;
}

DimensionProfile random_profile(std::mt19937& rng) {
    std::uniform_int_distribution<int> nparts(0, 12);
    std::uniform_int_distribution<std::int64_t> dim(1, 60);
    std::vector<std::int64_t> parts;
    const int n = nparts(rng);
    for (int i = 0; i < n; ++i) parts.push_back(dim(rng));
    return DimensionProfile::from_parts(parts);
}

}  // namespace

TEST_CASE("sigma of the three-part profile", "[sums]") {
    auto p = DimensionProfile::from_parts({45, 180, 270});
    auto s = sigma(p);
    CHECK(s.achievable() == std::vector<std::int64_t>{0, 45, 180, 225, 270, 315, 450, 495});
}

TEST_CASE("sigma edge cases", "[sums]") {
    CHECK(sigma(DimensionProfile{}).achievable() == std::vector<std::int64_t>{0});
    CHECK(sigma(DimensionProfile::from_parts({9})).achievable() ==
          std::vector<std::int64_t>{0, 9});
    DimensionProfile big = DimensionProfile::from_entries({{1'000'000, 2}});
    CHECK_THROWS_AS(sigma(big), Error);
}

TEST_CASE("sigma agrees with brute force on random profiles", "[sums]") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
        DimensionProfile p = random_profile(rng);
        SumSet s = sigma(p);
        auto got = s.achievable();
        auto expect = brute_force_sums(p);
        CHECK(std::set<std::int64_t>(got.begin(), got.end()) == expect);
        // complement symmetry and bounds
        CHECK(s.contains(0));
        CHECK(s.contains(p.total));
        for (std::int64_t v : got) CHECK(s.contains(p.total - v));
        // cardinality bound: product of (mult + 1)
        std::int64_t bound = 1;
        for (auto [dim, mult] : p.entries) bound *= mult + 1;
        CHECK(static_cast<std::int64_t>(got.size()) <= bound);
    }
}

TEST_CASE("realizations enumerates every witness", "[sums]") {
    auto d6 = DimensionProfile::from_entries(
        {{4, 1}, {15, 1}, {24, 1}, {80, 2}, {240, 3}, {480, 3}, {640, 1}});
    auto r = realizations(d6, 39);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == std::vector<std::int64_t>{0, 1, 1, 0, 0, 0, 0});

    auto d5 = DimensionProfile::from_parts({36, 90, 135, 216, 270, 540});
    CHECK(realizations(d5, 54).empty());

    CHECK(realizations(d5, 0) ==
          std::vector<std::vector<std::int64_t>>{{0, 0, 0, 0, 0, 0}});

    // every reported realization really sums to the target, and the count
    // matches a direct enumeration through the sum set
    std::mt19937 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        DimensionProfile p = random_profile(rng);
        std::uniform_int_distribution<std::int64_t> tgt(0, std::max<std::int64_t>(p.total, 1));
        const std::int64_t target = tgt(rng);
        auto rs = realizations(p, target);
        for (const auto& counts : rs) {
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < counts.size(); ++i)
                sum += counts[i] * p.entries[i].first;
            CHECK(sum == target);
        }
        CHECK(rs.empty() == !sigma(p).contains(target));
    }
}

TEST_CASE("remove is exact multiset difference", "[sums]") {
    auto d4 = DimensionProfile::from_parts({45, 180, 270});
    CHECK(remove_parts(d4, {45}) == DimensionProfile::from_parts({180, 270}));
    CHECK(remove_parts(d4, {}) == d4);
    auto d5 = DimensionProfile::from_parts({36, 90, 135, 216, 270, 540});
    CHECK(remove_parts(d5, {135}) == DimensionProfile::from_parts({36, 90, 216, 270, 540}));
    CHECK_THROWS_AS(remove_parts(d4, {45, 45}), Error);
    CHECK_THROWS_AS(remove_parts(d4, {44}), Error);
    CHECK_THROWS_AS(remove(d4, {1, 1}), Error);
}

TEST_CASE("profile normalization", "[sums]") {
    auto p = DimensionProfile::from_entries({{240, 1}, {80, 2}, {240, 2}});
    REQUIRE(p.entries.size() == 2);
    CHECK(p.entries[0] == std::pair<std::int64_t, std::int64_t>{80, 2});
    CHECK(p.entries[1] == std::pair<std::int64_t, std::int64_t>{240, 3});
    CHECK(p.total == 80 * 2 + 240 * 3);
    CHECK(p.multiplicity_of(240) == 3);
    CHECK(p.multiplicity_of(7) == 0);
    CHECK_THROWS_AS(DimensionProfile::from_entries({{0, 1}}), Error);
    CHECK_THROWS_AS(DimensionProfile::from_entries({{5, 0}}), Error);
}
