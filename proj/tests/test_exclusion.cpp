#include <catch2/catch_amalgamated.hpp>

#include "excsing/builtin_data.hpp"
#include "excsing/exclusion.hpp"

using namespace excsing;

namespace {

HilbertCandidate candidate_n4() {
    HilbertCandidate c;
    c.n = 4;
    c.d = 36;
    c.horizon = 6;
    c.h = {9, 45, 165, 450, 1017, 2019};
    c.q = {0, 0, 0, 45, 270, 984};
    return c;
}

HilbertCandidate candidate_n5() {
    HilbertCandidate c;
    c.n = 5;
    c.d = 45;
    c.horizon = 9;
    c.h = {9, 45, 165, 495, 1287, 2964, 6165, 11790, 21045};
    c.q = {0, 0, 0, 0, 0, 39, 270, 1080, 3265};
    return c;
}

// brute-force soundness oracle: a residual is realizable iff some count
// combination over the profile hits it
bool brute_force_realizable(const DimensionProfile& p, std::int64_t target) {
    std::vector<std::int64_t> sums{0};
    for (auto [dim, mult] : p.entries) {
        std::vector<std::int64_t> next;
        for (auto s : sums)
            for (std::int64_t c = 0; c <= mult; ++c) next.push_back(s + c * dim);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sums = std::move(next);
    }
    return std::binary_search(sums.begin(), sums.end(), target);
}

std::vector<std::int64_t> branch_image_dims(const Refutation& r) {
    std::vector<std::int64_t> dims;
    for (const auto& s : r.trace)
        if (s.rule == "branch") dims.push_back(s.data.at("image_dim").get<std::int64_t>());
    return dims;
}

}  // namespace

TEST_CASE("forced constituents", "[exclusion]") {
    const auto& deltas = builtin::delta_profiles();

    const auto f45 = forced_constituents(45, deltas[3]);
    REQUIRE(f45.realizations.size() == 1);
    CHECK(f45.forced_dims == std::vector<std::int64_t>{45});

    const auto f39 = forced_constituents(39, deltas[5]);
    REQUIRE(f39.realizations.size() == 1);
    CHECK(f39.forced_dims == std::vector<std::int64_t>{15, 24});

    const auto f0 = forced_constituents(0, deltas[4]);
    REQUIRE(f0.realizations.size() == 1);
    CHECK(f0.forced_dims.empty());

    CHECK(forced_constituents(54, deltas[4]).realizations.empty());
}

TEST_CASE("image dimension options", "[exclusion]") {
    const auto& deltas = builtin::delta_profiles();

    // parts 90/135/180 against the degree-5 profile: 180 has no home there
    const auto opts = image_dimension_options({90, 135, 180}, deltas[4]);
    CHECK(opts.usable == std::vector<std::int64_t>{90, 135});
    CHECK(opts.unusable == std::vector<std::int64_t>{180});
    CHECK(!opts.contradiction);
    std::vector<std::int64_t> sums;
    for (const auto& [subset, s] : opts.options) sums.push_back(s);
    std::sort(sums.begin(), sums.end());
    CHECK(sums == std::vector<std::int64_t>{90, 135, 225});

    // an irreducible product forces the full image
    const auto inj = image_dimension_options({216}, deltas[6]);
    REQUIRE(inj.options.size() == 1);
    CHECK(inj.options[0].second == 216);

    // a part with no home anywhere contradicts the non-zero map
    const auto none = image_dimension_options({7}, deltas[4]);
    CHECK(none.contradiction);

    // multiplicity respect: two parts of a dimension the target holds once
    const auto capped =
        image_dimension_options({90, 90}, DimensionProfile::from_parts({90, 36}));
    REQUIRE(capped.options.size() == 1);
    CHECK(capped.options[0].second == 90);
}

TEST_CASE("the degree-4 survivor is refuted along branches 90/135/225", "[exclusion]") {
    const CaseData data = make_case(candidate_n4(), builtin::delta_profiles(),
                                    builtin::tensor_facts());
    const Refutation r = exclude_case(data);
    CHECK(r.verdict == Verdict::refuted);
    CHECK(branch_image_dims(r) == std::vector<std::int64_t>{90, 135, 225});

    std::vector<std::int64_t> residuals;
    for (const auto& s : r.trace)
        if (s.rule == "branch") {
            CHECK(s.data.at("closed").get<bool>());
            residuals.push_back(s.data.at("residual").get<std::int64_t>());
        }
    CHECK(residuals == std::vector<std::int64_t>{180, 135, 45});
}

TEST_CASE("the degree-5 survivor is refuted via the injective 216", "[exclusion]") {
    const CaseData data = make_case(candidate_n5(), builtin::delta_profiles(),
                                    builtin::tensor_facts());
    const Refutation r = exclude_case(data);
    CHECK(r.verdict == Verdict::refuted);
    CHECK(branch_image_dims(r) == std::vector<std::int64_t>{216});
    bool saw_injectivity = false;
    for (const auto& s : r.trace) {
        if (s.rule == "irreducible-source-injectivity") saw_injectivity = true;
        if (s.rule == "branch") {
            CHECK(s.data.at("closed").get<bool>());
            CHECK(s.data.at("residual").get<std::int64_t>() == 54);
        }
    }
    CHECK(saw_injectivity);
}

TEST_CASE("closed branches are confirmed by brute force", "[exclusion]") {
    // soundness: re-verify every closed residual independently
    struct Setup {
        HilbertCandidate cand;
        std::int64_t next_degree;
    };
    for (const auto& setup : {Setup{candidate_n4(), 5}, Setup{candidate_n5(), 7}}) {
        const CaseData data = make_case(setup.cand, builtin::delta_profiles(),
                                        builtin::tensor_facts());
        const Refutation r = exclude_case(data);
        REQUIRE(r.verdict == Verdict::refuted);
        const DimensionProfile& next =
            builtin::delta_profiles()[static_cast<std::size_t>(setup.next_degree - 1)];
        for (const auto& s : r.trace) {
            if (s.rule != "branch") continue;
            std::vector<std::int64_t> used;
            for (const auto& v : s.data.at("image_parts")) used.push_back(v.get<std::int64_t>());
            const auto rest = remove_parts(next, used);
            const std::int64_t residual = s.data.at("residual").get<std::int64_t>();
            CHECK(!brute_force_realizable(rest, residual));
        }
    }
}

TEST_CASE("synthetic realizable residual stays inconclusive with a witness", "[exclusion]") {
    CaseData data;
    data.n = 4;
    data.q = {0, 0, 10, 40, 0, 0};
    data.delta.emplace(3, DimensionProfile::from_parts({10, 30}));
    data.delta.emplace(4, DimensionProfile::from_parts({18, 22, 27}));
    data.tensor_facts = {{10, 3, {18, 22, 50}}};  // 9 * 10 = 90
    const Refutation r = exclude_case(data);
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(!r.open_branch.empty());
    bool saw_open = false;
    for (const auto& s : r.trace)
        if (s.rule == "branch" && !s.data.at("closed").get<bool>()) {
            saw_open = true;
            CHECK(s.data.contains("witness"));
        }
    CHECK(saw_open);
}

TEST_CASE("unrealizable q_m refutes immediately", "[exclusion]") {
    CaseData data;
    data.n = 4;
    data.q = {0, 0, 0, 44, 270, 984};
    for (std::size_t k = 0; k < builtin::delta_profiles().size(); ++k)
        data.delta.emplace(static_cast<std::int64_t>(k + 1), builtin::delta_profiles()[k]);
    data.tensor_facts = builtin::tensor_facts();
    const Refutation r = exclude_case(data);
    CHECK(r.verdict == Verdict::refuted);
}

TEST_CASE("missing tensor data is inconclusive, not an error", "[exclusion]") {
    const CaseData data = make_case(candidate_n4(), builtin::delta_profiles(), {});
    const Refutation r = exclude_case(data);
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(r.open_branch.find("tensor") != std::string::npos);
}

TEST_CASE("tensor facts validate the dimension sum", "[exclusion]") {
    CaseData data;
    data.n = 4;
    data.q = {0, 1};
    data.tensor_facts = {{45, 4, {90, 135, 181}}};
    CHECK_THROWS_AS(data.validate(), ValidationError);
}

TEST_CASE("traces are deterministic", "[exclusion]") {
    const CaseData data = make_case(candidate_n4(), builtin::delta_profiles(),
                                    builtin::tensor_facts());
    const Refutation a = exclude_case(data);
    const Refutation b = exclude_case(data);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].rule == b.trace[i].rule);
        CHECK(a.trace[i].data.dump() == b.trace[i].data.dump());
    }
}
