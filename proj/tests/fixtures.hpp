#pragma once

// Hand-built character tables for small groups, fed through the JSON parser
// so every test also exercises parse-time validation.  Values and power maps
// were derived by hand from the group structure.

#include <json.hpp>

#include "excsing/chartab.hpp"

namespace fixtures {

using nlohmann::json;

inline json cyc(std::int64_t n, std::initializer_list<std::pair<std::int64_t, std::int64_t>> terms) {
    json t = json::array();
    for (auto [k, num] : terms) t.push_back({k, num, 1});
    return json{{"n", n}, {"terms", t}};
}

// S3: identity / 3 transpositions / 2 three-cycles
inline json s3_json() {
    return json{
        {"order", 6},
        {"exponent", 6},
        {"classes", {{{"size", 1}, {"elementOrder", 1}},
                     {{"size", 3}, {"elementOrder", 2}},
                     {{"size", 2}, {"elementOrder", 3}}}},
        {"powerMaps", {{"2", {0, 0, 2}},
                       {"3", {0, 1, 0}},
                       {"5", {0, 1, 2}},
                       {"7", {0, 1, 2}},
                       {"11", {0, 1, 2}},
                       {"13", {0, 1, 2}}}},
        {"irreducibles", {{{"name", "triv"}, {"values", {1, 1, 1}}},
                          {{"name", "sgn"}, {"values", {1, -1, 1}}},
                          {{"name", "std"}, {"values", {2, 0, -1}}}}},
        {"designated", "std"},
    };
}

// C6 = <g>, classes ordered e, g, g^2, g^3, g^4, g^5; chi_j(g^k) = zeta_6^(jk)
inline json c6_json() {
    json irr = json::array();
    for (int j = 0; j < 6; ++j) {
        json values = json::array();
        for (int k = 0; k < 6; ++k) values.push_back(cyc(6, {{(j * k) % 6, 1}}));
        irr.push_back({{"name", "chi" + std::to_string(j)}, {"values", values}});
    }
    json classes = json::array();
    const int orders[] = {1, 6, 3, 2, 3, 6};
    for (int k = 0; k < 6; ++k) classes.push_back({{"size", 1}, {"elementOrder", orders[k]}});
    auto pmap = [](int p) {
        json m = json::array();
        for (int k = 0; k < 6; ++k) m.push_back((p * k) % 6);
        return m;
    };
    return json{{"order", 6},
                {"exponent", 6},
                {"classes", classes},
                {"powerMaps", {{"2", pmap(2)}, {"3", pmap(3)}, {"5", pmap(5)},
                               {"7", pmap(7)}, {"11", pmap(11)}, {"13", pmap(13)}}},
                {"irreducibles", irr},
                {"designated", "chi1"}};
}

// D4 of order 8, classes e, r^2, {r,r^3}, {s,sr^2}, {sr,sr^3}
inline json d4_json() {
    return json{
        {"order", 8},
        {"exponent", 4},
        {"classes", {{{"size", 1}, {"elementOrder", 1}},
                     {{"size", 1}, {"elementOrder", 2}},
                     {{"size", 2}, {"elementOrder", 4}},
                     {{"size", 2}, {"elementOrder", 2}},
                     {{"size", 2}, {"elementOrder", 2}}}},
        {"powerMaps", {{"2", {0, 0, 1, 0, 0}},
                       {"3", {0, 1, 2, 3, 4}},
                       {"5", {0, 1, 2, 3, 4}},
                       {"7", {0, 1, 2, 3, 4}},
                       {"11", {0, 1, 2, 3, 4}},
                       {"13", {0, 1, 2, 3, 4}}}},
        {"irreducibles", {{{"name", "triv"}, {"values", {1, 1, 1, 1, 1}}},
                          {{"name", "a"}, {"values", {1, 1, 1, -1, -1}}},
                          {{"name", "b"}, {"values", {1, 1, -1, 1, -1}}},
                          {{"name", "ab"}, {"values", {1, 1, -1, -1, 1}}},
                          {{"name", "two"}, {"values", {2, -2, 0, 0, 0}}}}},
        {"designated", "two"},
    };
}

// A4, classes e, (12)(34)-type, (123)-type, (132)-type; omega = zeta_3
inline json a4_json() {
    json w = cyc(3, {{1, 1}});
    json w2 = cyc(3, {{2, 1}});
    return json{
        {"order", 12},
        {"exponent", 6},
        {"classes", {{{"size", 1}, {"elementOrder", 1}},
                     {{"size", 3}, {"elementOrder", 2}},
                     {{"size", 4}, {"elementOrder", 3}},
                     {{"size", 4}, {"elementOrder", 3}}}},
        {"powerMaps", {{"2", {0, 0, 3, 2}},
                       {"3", {0, 1, 0, 0}},
                       {"5", {0, 1, 3, 2}},
                       {"7", {0, 1, 2, 3}},
                       {"11", {0, 1, 3, 2}},
                       {"13", {0, 1, 2, 3}}}},
        {"irreducibles", {{{"name", "triv"}, {"values", {1, 1, 1, 1}}},
                          {{"name", "omega"}, {"values", {1, 1, w, w2}}},
                          {{"name", "omegabar"}, {"values", {1, 1, w2, w}}},
                          {{"name", "three"}, {"values", {3, -1, 0, 0}}}}},
        {"designated", "three"},
    };
}

// C3 with a faithful linear character designated (center acts nontrivially on
// a degree-1 irreducible)
inline json c3_json() {
    json w = cyc(3, {{1, 1}});
    json w2 = cyc(3, {{2, 1}});
    return json{
        {"order", 3},
        {"exponent", 3},
        {"classes", {{{"size", 1}, {"elementOrder", 1}},
                     {{"size", 1}, {"elementOrder", 3}},
                     {{"size", 1}, {"elementOrder", 3}}}},
        {"powerMaps", {{"2", {0, 2, 1}},
                       {"3", {0, 0, 0}},
                       {"5", {0, 2, 1}},
                       {"7", {0, 1, 2}},
                       {"11", {0, 2, 1}},
                       {"13", {0, 1, 2}}}},
        {"irreducibles", {{{"name", "triv"}, {"values", {1, 1, 1}}},
                          {{"name", "chi1"}, {"values", {1, w, w2}}},
                          {{"name", "chi2"}, {"values", {1, w2, w}}}}},
        {"designated", "chi1"},
    };
}

inline excsing::CharacterTable s3() { return excsing::CharacterTable::from_json(s3_json()); }
inline excsing::CharacterTable c6() { return excsing::CharacterTable::from_json(c6_json()); }
inline excsing::CharacterTable d4() { return excsing::CharacterTable::from_json(d4_json()); }
inline excsing::CharacterTable a4() { return excsing::CharacterTable::from_json(a4_json()); }
inline excsing::CharacterTable c3() { return excsing::CharacterTable::from_json(c3_json()); }

}  // namespace fixtures
