#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "excsing/builtin_data.hpp"
#include "excsing/exclusion.hpp"
#include "excsing/version.hpp"

namespace excsing {

/// Contents of a profile data file: the per-degree constituent dimension
/// profiles, the tensor decompositions for the exclusion arguments, and the
/// semi-invariant scan summary.
struct DeltaData {
    std::vector<DimensionProfile> profiles;  // degree k at index k-1
    std::vector<TensorFact> tensor_facts;
    std::int64_t none_through_degree = 0;
    std::int64_t first_positive_degree = 0;
};

inline DeltaData builtin_delta_data() {
    DeltaData d;
    d.profiles = builtin::delta_profiles();
    d.tensor_facts = builtin::tensor_facts();
    d.none_through_degree = builtin::kNoSemiInvariantsThroughDegree;
    d.first_positive_degree = builtin::kFirstSemiInvariantDegree;
    return d;
}

inline nlohmann::ordered_json profile_to_json(const DimensionProfile& p) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (auto [dim, mult] : p.entries) entries.push_back({dim, mult});
    return entries;
}

inline DimensionProfile profile_from_json(const nlohmann::json& j) {
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("profile entry must be a [dimension, multiplicity] pair");
        entries.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
    }
    return DimensionProfile::from_entries(std::move(entries));
}

inline nlohmann::ordered_json delta_data_to_json(const DeltaData& d) {
    nlohmann::ordered_json profiles = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < d.profiles.size(); ++k)
        profiles.push_back({{"k", k + 1}, {"profile", profile_to_json(d.profiles[k])}});
    nlohmann::ordered_json tensor = nlohmann::ordered_json::array();
    for (const auto& f : d.tensor_facts)
        tensor.push_back({{"source", f.source_dim}, {"level", f.source_level}, {"parts", f.parts}});
    return nlohmann::ordered_json{
        {"schema", kSchemaVersion},
        {"profiles", std::move(profiles)},
        {"tensor", std::move(tensor)},
        {"semiInvariants",
         {{"noneThroughDegree", d.none_through_degree},
          {"firstPositiveDegree", d.first_positive_degree}}}};
}

inline DeltaData delta_data_from_json(const nlohmann::json& j) {
    DeltaData d;
    try {
        std::map<std::int64_t, DimensionProfile> by_k;
        for (const auto& e : j.at("profiles"))
            by_k.emplace(e.at("k").get<std::int64_t>(), profile_from_json(e.at("profile")));
        std::int64_t expect = 1;
        for (auto& [k, p] : by_k) {
            if (k != expect)
                throw ParseError("profile degrees must be contiguous from 1; missing k = " +
                                 std::to_string(expect));
            d.profiles.push_back(std::move(p));
            ++expect;
        }
        if (j.contains("tensor")) {
            for (const auto& e : j.at("tensor")) {
                TensorFact f;
                f.source_dim = e.at("source").get<std::int64_t>();
                f.source_level = e.at("level").get<std::int64_t>();
                for (const auto& p : e.at("parts")) f.parts.push_back(p.get<std::int64_t>());
                d.tensor_facts.push_back(std::move(f));
            }
        }
        if (j.contains("semiInvariants")) {
            d.none_through_degree = j.at("semiInvariants").at("noneThroughDegree").get<std::int64_t>();
            d.first_positive_degree =
                j.at("semiInvariants").at("firstPositiveDegree").get<std::int64_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed profile data: ") + e.what());
    }
    return d;
}

/// "builtin:paper" or a path to a profile data file.
inline DeltaData load_delta_data(const std::string& source) {
    if (source == "builtin:paper") return builtin_delta_data();
    std::ifstream in(source);
    if (!in) throw ParseError("cannot open profile data file: " + source);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("profile data is not valid JSON: ") + e.what());
    }
    return delta_data_from_json(j);
}

}  // namespace excsing
