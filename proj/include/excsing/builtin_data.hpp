#pragma once

// Built-in reference data for the pipeline's no-table mode: the constituent
// dimension profiles of the symmetric powers of the dual defining
// representation (degrees 1..9), the two tensor decompositions the exclusion
// arguments use, and the semi-invariant scan results.  Table mode recomputes
// all of this from a character table and cross-checks it against these
// numbers.

#include <vector>

#include "excsing/exclusion.hpp"
#include "excsing/sums.hpp"

namespace excsing::builtin {

/// Profiles for degrees 1..9; index k-1 holds degree k.
inline const std::vector<DimensionProfile>& delta_profiles() {
    static const std::vector<DimensionProfile> profiles = {
        DimensionProfile::from_entries({{9, 1}}),
        DimensionProfile::from_entries({{45, 1}}),
        DimensionProfile::from_entries({{5, 1}, {160, 1}}),
        DimensionProfile::from_entries({{45, 1}, {180, 1}, {270, 1}}),
        DimensionProfile::from_entries(
            {{36, 1}, {90, 1}, {135, 1}, {216, 1}, {270, 1}, {540, 1}}),
        DimensionProfile::from_entries(
            {{4, 1}, {15, 1}, {24, 1}, {80, 2}, {240, 3}, {480, 3}, {640, 1}}),
        DimensionProfile::from_entries({{9, 1}, {36, 1}, {135, 3}, {180, 3}, {216, 3},
                                        {270, 1}, {324, 1}, {405, 1}, {540, 3}, {720, 1},
                                        {729, 2}}),
        DimensionProfile::from_entries({{36, 1}, {45, 4}, {180, 5}, {270, 5}, {324, 2},
                                        {360, 6}, {405, 3}, {540, 7}, {576, 2}, {720, 1},
                                        {729, 1}}),
        DimensionProfile::from_entries({{5, 3}, {20, 3}, {30, 3}, {40, 1}, {45, 1},
                                        {60, 1}, {80, 1}, {160, 12}, {240, 12}, {480, 10},
                                        {640, 10}, {720, 11}}),
    };
    return profiles;
}

/// Tensor decompositions used by the exclusion endgame: the dual defining
/// representation times the forced 45 splits as 90 + 135 + 180, and times the
/// forced 24 stays irreducible (dimension 216).
inline const std::vector<TensorFact>& tensor_facts() {
    static const std::vector<TensorFact> facts = {
        {45, 4, {90, 135, 180}},
        {24, 6, {216}},
    };
    return facts;
}

/// Semi-invariant scan results: none in degrees 1..11, first one in degree 12.
inline constexpr std::int64_t kNoSemiInvariantsThroughDegree = 11;
inline constexpr std::int64_t kFirstSemiInvariantDegree = 12;

}  // namespace excsing::builtin
