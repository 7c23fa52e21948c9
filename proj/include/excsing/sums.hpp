#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "excsing/rational.hpp"

namespace excsing {

/// Multiset of constituent dimensions: entries (dim, mult) sorted by dim with
/// distinct dims and positive multiplicities.
struct DimensionProfile {
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;
    std::int64_t total = 0;

    static DimensionProfile from_entries(std::vector<std::pair<std::int64_t, std::int64_t>> raw) {
        std::map<std::int64_t, std::int64_t> agg;
        for (auto [dim, mult] : raw) {
            if (dim < 1) throw Error("profile dimension must be positive");
            if (mult < 1) throw Error("profile multiplicity must be positive");
            agg[dim] += mult;
        }
        DimensionProfile p;
        for (auto [dim, mult] : agg) {
            p.entries.emplace_back(dim, mult);
            p.total += dim * mult;
        }
        return p;
    }

    static DimensionProfile from_parts(const std::vector<std::int64_t>& parts) {
        std::vector<std::pair<std::int64_t, std::int64_t>> raw;
        raw.reserve(parts.size());
        for (auto d : parts) raw.emplace_back(d, 1);
        return from_entries(std::move(raw));
    }

    std::int64_t multiplicity_of(std::int64_t dim) const {
        for (auto [d, m] : entries)
            if (d == dim) return m;
        return 0;
    }

    /// Expanded list of parts, each dimension repeated by its multiplicity.
    std::vector<std::int64_t> parts() const {
        std::vector<std::int64_t> out;
        for (auto [d, m] : entries)
            for (std::int64_t i = 0; i < m; ++i) out.push_back(d);
        return out;
    }

    friend bool operator==(const DimensionProfile& a, const DimensionProfile& b) {
        return a.entries == b.entries;
    }
};

/// The set of all partial sums of a profile: every value sum r'_i * m_i with
/// 0 <= r'_i <= r_i, stored as a presence array over 0..total.
struct SumSet {
    DimensionProfile profile;
    std::vector<char> present;

    bool contains(std::int64_t s) const {
        return s >= 0 && s <= profile.total && present[static_cast<std::size_t>(s)];
    }

    std::vector<std::int64_t> achievable() const {
        std::vector<std::int64_t> out;
        for (std::size_t s = 0; s < present.size(); ++s)
            if (present[s]) out.push_back(static_cast<std::int64_t>(s));
        return out;
    }
};

inline constexpr std::int64_t kSigmaTotalGuard = 1'000'000;

/// Exact partial-sum set via bounded-knapsack DP; linear in total per part copy.
inline SumSet sigma(const DimensionProfile& p) {
    if (p.total > kSigmaTotalGuard)
        throw Error("sigma: profile total " + std::to_string(p.total) + " exceeds guard");
    SumSet s;
    s.profile = p;
    s.present.assign(static_cast<std::size_t>(p.total) + 1, 0);
    s.present[0] = 1;
    std::int64_t reach = 0;
    for (auto [dim, mult] : p.entries) {
        for (std::int64_t copy = 0; copy < mult; ++copy) {
            for (std::int64_t v = reach; v >= 0; --v) {
                if (s.present[static_cast<std::size_t>(v)])
                    s.present[static_cast<std::size_t>(v + dim)] = 1;
            }
            reach += dim;
        }
    }
    return s;
}

/// Every sub-multiset (as a count per profile entry) whose weighted sum is
/// target.  Full enumeration, depth-first with suffix-sum pruning; the
/// exclusion arguments need the complete list, not just a witness.
inline std::vector<std::vector<std::int64_t>> realizations(const DimensionProfile& p,
                                                           std::int64_t target) {
    std::vector<std::vector<std::int64_t>> out;
    if (target < 0) return out;
    const std::size_t n = p.entries.size();
    std::vector<std::int64_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;)
        suffix[i] = suffix[i + 1] + p.entries[i].first * p.entries[i].second;
    std::vector<std::int64_t> counts(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t rest) -> void {
        if (rest == 0 && i == n) {
            out.push_back(counts);
            return;
        }
        if (i == n || rest > suffix[i]) return;
        const auto [dim, mult] = p.entries[i];
        const std::int64_t top = std::min(mult, rest / dim);
        for (std::int64_t c = 0; c <= top; ++c) {
            counts[i] = c;
            self(self, i + 1, rest - c * dim);
        }
        counts[i] = 0;
    };
    rec(rec, 0, target);
    return out;
}

/// Multiset difference; used counts are per profile entry.
inline DimensionProfile remove(const DimensionProfile& p, const std::vector<std::int64_t>& used) {
    if (used.size() != p.entries.size())
        throw Error("remove: count vector does not match profile entries");
    std::vector<std::pair<std::int64_t, std::int64_t>> rest;
    for (std::size_t i = 0; i < used.size(); ++i) {
        const auto [dim, mult] = p.entries[i];
        if (used[i] < 0 || used[i] > mult)
            throw Error("remove: underflow at dimension " + std::to_string(dim));
        if (mult - used[i] > 0) rest.emplace_back(dim, mult - used[i]);
    }
    return DimensionProfile::from_entries(std::move(rest));
}

/// Convenience form of remove: the sub-multiset given as a list of dimensions.
inline DimensionProfile remove_parts(const DimensionProfile& p,
                                     const std::vector<std::int64_t>& dims) {
    std::vector<std::int64_t> used(p.entries.size(), 0);
    for (auto d : dims) {
        bool found = false;
        for (std::size_t i = 0; i < p.entries.size(); ++i) {
            if (p.entries[i].first == d) {
                ++used[i];
                found = true;
                break;
            }
        }
        if (!found) throw Error("remove: dimension " + std::to_string(d) + " not in profile");
    }
    return remove(p, used);
}

}  // namespace excsing
