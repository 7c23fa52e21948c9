#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "excsing/hilbert.hpp"
#include "excsing/sums.hpp"

namespace excsing {

/// Decomposition of (dual of the defining representation) tensor an
/// irreducible constituent of the given dimension, recorded as the multiset
/// of constituent dimensions.  source_level is the symmetric power in which
/// the source constituent sits.  A single part means the product is
/// irreducible.
struct TensorFact {
    std::int64_t source_dim = 0;
    std::int64_t source_level = 0;
    std::vector<std::int64_t> parts;

    bool irreducible() const { return parts.size() == 1; }
};

/// Everything the exclusion engine needs about one surviving candidate: its
/// q-profile, the constituent-dimension profiles of the relevant degrees, and
/// the tensor decompositions available for forced constituents.
struct CaseData {
    std::int64_t n = 0;
    std::vector<std::int64_t> q;  // q_1..q_M
    std::map<std::int64_t, DimensionProfile> delta;
    std::vector<TensorFact> tensor_facts;

    std::int64_t q_at(std::int64_t m) const { return q.at(static_cast<std::size_t>(m - 1)); }

    void validate() const {
        for (const auto& fact : tensor_facts) {
            std::int64_t sum = 0;
            for (auto p : fact.parts) sum += p;
            if (sum != (kAmbientDim + 1) * fact.source_dim)
                throw ValidationError("tensor decomposition for source " +
                                      std::to_string(fact.source_dim) + " sums to " +
                                      std::to_string(sum) + ", expected " +
                                      std::to_string((kAmbientDim + 1) * fact.source_dim));
        }
    }

    const TensorFact* fact_for(std::int64_t dim) const {
        for (const auto& f : tensor_facts)
            if (f.source_dim == dim) return &f;
        return nullptr;
    }
};

enum class Verdict { refuted, inconclusive };

struct TraceStep {
    std::string rule;
    nlohmann::ordered_json data;
};

struct Refutation {
    Verdict verdict = Verdict::inconclusive;
    std::vector<TraceStep> trace;
    std::string open_branch;  // non-empty exactly when inconclusive
};

/// Realizations of q_m inside the profile, plus the dimensions that occur in
/// every realization (those constituents are forced to exist).
struct ForcedConstituents {
    std::vector<std::vector<std::int64_t>> realizations;  // counts per profile entry
    std::vector<std::int64_t> forced_dims;
};

inline ForcedConstituents forced_constituents(std::int64_t q_m, const DimensionProfile& delta) {
    if (q_m < 0) throw Error("forced_constituents: q must be non-negative");
    ForcedConstituents fc;
    fc.realizations = realizations(delta, q_m);
    if (fc.realizations.empty()) return fc;
    for (std::size_t i = 0; i < delta.entries.size(); ++i) {
        bool everywhere = true;
        for (const auto& r : fc.realizations)
            if (r[i] == 0) { everywhere = false; break; }
        if (everywhere) fc.forced_dims.push_back(delta.entries[i].first);
    }
    return fc;
}

/// Candidate image dimensions of the multiplication map built on a tensor
/// decomposition: sums over the non-empty sub-multisets of the parts that can
/// embed into the next degree (each part's dimension must occur there, with
/// multiplicities respected).  The map is non-zero, so the empty image is
/// excluded; no usable part at all is a contradiction.
struct ImageOptions {
    std::vector<std::int64_t> usable;
    std::vector<std::int64_t> unusable;
    // (sub-multiset of part dimensions, its sum), lexicographically ordered
    std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> options;
    bool contradiction = false;
};

inline ImageOptions image_dimension_options(const std::vector<std::int64_t>& tensor_parts,
                                            const DimensionProfile& delta_next) {
    ImageOptions opts;
    std::map<std::int64_t, std::int64_t> counts;  // usable parts, bounded by delta_next
    for (std::int64_t p : tensor_parts) {
        if (delta_next.multiplicity_of(p) > 0) {
            opts.usable.push_back(p);
            ++counts[p];
        } else {
            opts.unusable.push_back(p);
        }
    }
    std::sort(opts.usable.begin(), opts.usable.end());
    std::sort(opts.unusable.begin(), opts.unusable.end());
    if (opts.usable.empty()) {
        opts.contradiction = true;
        return opts;
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;  // (dim, max copies)
    for (auto [dim, cnt] : counts)
        entries.emplace_back(dim, std::min(cnt, delta_next.multiplicity_of(dim)));
    std::vector<std::int64_t> chosen(entries.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == entries.size()) {
            std::vector<std::int64_t> subset;
            std::int64_t sum = 0;
            for (std::size_t j = 0; j < entries.size(); ++j) {
                for (std::int64_t cpy = 0; cpy < chosen[j]; ++cpy) subset.push_back(entries[j].first);
                sum += chosen[j] * entries[j].first;
            }
            if (!subset.empty()) opts.options.emplace_back(std::move(subset), sum);
            return;
        }
        for (std::int64_t c = 0; c <= entries[i].second; ++c) {
            chosen[i] = c;
            self(self, i + 1);
        }
        chosen[i] = 0;
    };
    rec(rec, 0);
    std::sort(opts.options.begin(), opts.options.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    return opts;
}

/// The endgame for one surviving candidate.  Locates the first positive q_m,
/// forces a constituent there, and pushes its multiplication map into degree
/// m+1: every possible image leaves a residual that must be realized in what
/// is left of the next profile.  Exactly three inference rules are used: the
/// map is non-zero, an irreducible source maps injectively, and constituent
/// accounting respects multiplicities.  Refuted iff every branch closes.
inline Refutation exclude_case(const CaseData& data) {
    data.validate();
    Refutation out;
    auto step = [&](std::string rule, nlohmann::ordered_json payload) {
        out.trace.push_back({std::move(rule), std::move(payload)});
    };

    std::int64_t m = 0;
    for (std::int64_t i = 1; i <= static_cast<std::int64_t>(data.q.size()); ++i) {
        if (data.q_at(i) > 0) { m = i; break; }
    }
    if (m == 0) {
        out.open_branch = "no positive q_m to analyze";
        step("no-positive-q", {{"detail", out.open_branch}});
        return out;
    }
    step("first-positive-q", {{"m", m}, {"q", data.q_at(m)}});

    auto delta_it = data.delta.find(m);
    if (delta_it == data.delta.end())
        throw Error("exclusion: no dimension profile supplied for degree " + std::to_string(m));
    const ForcedConstituents fc = forced_constituents(data.q_at(m), delta_it->second);
    {
        nlohmann::ordered_json reals = nlohmann::ordered_json::array();
        for (const auto& r : fc.realizations) {
            nlohmann::ordered_json parts = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < r.size(); ++i)
                for (std::int64_t cpy = 0; cpy < r[i]; ++cpy)
                    parts.push_back(delta_it->second.entries[i].first);
            reals.push_back(std::move(parts));
        }
        step("forced-constituents",
             {{"m", m}, {"target", data.q_at(m)}, {"realizations", std::move(reals)},
              {"forced", fc.forced_dims}});
    }
    if (fc.realizations.empty()) {
        out.verdict = Verdict::refuted;
        step("verdict", {{"refuted", true},
                         {"reason", "q_" + std::to_string(m) + " is not a partial sum of the profile"}});
        return out;
    }

    if (m + 1 > static_cast<std::int64_t>(data.q.size())) {
        out.open_branch = "horizon ends before degree " + std::to_string(m + 1);
        step("horizon-exhausted", {{"detail", out.open_branch}});
        return out;
    }
    auto next_it = data.delta.find(m + 1);
    if (next_it == data.delta.end())
        throw Error("exclusion: no dimension profile supplied for degree " + std::to_string(m + 1));
    const DimensionProfile& delta_next = next_it->second;
    const std::int64_t q_next = data.q_at(m + 1);

    bool attempted = false;
    for (std::int64_t dim : fc.forced_dims) {
        const TensorFact* fact = data.fact_for(dim);
        if (!fact) continue;
        attempted = true;

        const ImageOptions opts = image_dimension_options(fact->parts, delta_next);
        step("nonzero-multiplication-map",
             {{"source", dim}, {"parts", fact->parts}, {"next_degree", m + 1},
              {"usable", opts.usable}, {"unusable", opts.unusable}});
        if (fact->irreducible())
            step("irreducible-source-injectivity",
                 {{"source", dim}, {"image", fact->parts[0]}});
        if (opts.contradiction) {
            out.verdict = Verdict::refuted;
            step("verdict", {{"refuted", true},
                             {"reason", "non-zero map with no possible image in degree " +
                                            std::to_string(m + 1)}});
            return out;
        }

        bool all_closed = true;
        std::string open_detail;
        for (const auto& [subset, s] : opts.options) {
            nlohmann::ordered_json branch{{"image_parts", subset}, {"image_dim", s}};
            bool closed = false;
            if (s > q_next) {
                branch["closed"] = true;
                branch["reason"] = "image exceeds q_" + std::to_string(m + 1) + " = " +
                                   std::to_string(q_next);
                closed = true;
            } else {
                const std::int64_t residual = q_next - s;
                const DimensionProfile rest = remove_parts(delta_next, subset);
                const auto witness = realizations(rest, residual);
                branch["residual"] = residual;
                if (witness.empty()) {
                    branch["closed"] = true;
                    branch["reason"] = "residual " + std::to_string(residual) +
                                       " unrealizable in the remaining profile";
                    closed = true;
                } else {
                    branch["closed"] = false;
                    nlohmann::ordered_json w = nlohmann::ordered_json::array();
                    for (std::size_t i = 0; i < witness[0].size(); ++i)
                        for (std::int64_t cpy = 0; cpy < witness[0][i]; ++cpy)
                            w.push_back(rest.entries[i].first);
                    branch["witness"] = std::move(w);
                    open_detail = "image " + std::to_string(s) + " leaves realizable residual " +
                                  std::to_string(residual);
                }
            }
            step("branch", std::move(branch));
            all_closed = all_closed && closed;
        }
        if (all_closed) {
            out.verdict = Verdict::refuted;
            step("verdict", {{"refuted", true}, {"via_constituent", dim}});
            return out;
        }
        out.open_branch = open_detail;
    }

    if (!attempted) {
        out.open_branch = "no tensor decomposition available for any forced constituent";
        step("no-tensor-data", {{"forced", fc.forced_dims}});
    }
    step("verdict", {{"refuted", false}, {"open", out.open_branch}});
    return out;
}

/// Packages a sieve survivor for the exclusion engine.
inline CaseData make_case(const HilbertCandidate& cand,
                          const std::vector<DimensionProfile>& deltas,
                          std::vector<TensorFact> facts) {
    CaseData data;
    data.n = cand.n;
    data.q = cand.q;
    for (std::size_t k = 0; k < deltas.size(); ++k)
        data.delta.emplace(static_cast<std::int64_t>(k + 1), deltas[k]);
    data.tensor_facts = std::move(facts);
    data.validate();
    return data;
}

}  // namespace excsing
