#pragma once

#include <string>
#include <vector>

#include "excsing/chartab.hpp"
#include "excsing/sums.hpp"

namespace excsing {

/// Multiplicities of a class function with respect to the irreducibles of its
/// table.  Only produced by decompose(), which guarantees non-negative
/// integral multiplicities and exact reconstruction.
struct Decomposition {
    const CharacterTable* table = nullptr;
    std::vector<std::int64_t> multiplicities;
    Int dimension;

    /// Constituent dimensions with multiplicity, aggregated across
    /// non-isomorphic irreducibles of equal degree.
    DimensionProfile dimension_profile() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> raw;
        for (std::size_t i = 0; i < multiplicities.size(); ++i)
            if (multiplicities[i] > 0) raw.emplace_back(table->degree(i), multiplicities[i]);
        return DimensionProfile::from_entries(std::move(raw));
    }
};

/// Adams operation: value at class c is f evaluated at the class of g^k.
inline ClassFunction adams(const ClassFunction& f, std::int64_t k) {
    const CharacterTable& t = *f.table;
    std::vector<Cyclotomic> v;
    v.reserve(t.class_count());
    for (std::size_t c = 0; c < t.class_count(); ++c)
        v.push_back(f[static_cast<std::size_t>(power_class(t, static_cast<std::int64_t>(c), k))]);
    return ClassFunction(t, std::move(v));
}

inline ClassFunction tensor(const ClassFunction& f, const ClassFunction& g) {
    if (f.table != g.table) throw Error("tensor: class functions live on different tables");
    std::vector<Cyclotomic> v;
    v.reserve(f.values.size());
    for (std::size_t c = 0; c < f.values.size(); ++c) v.push_back(f[c] * g[c]);
    return ClassFunction(*f.table, std::move(v));
}

namespace detail {

// Shared driver for the Newton recurrences
//   symmetric:  k s_k = sum_{i=1..k} psi_i s_{k-i}
//   exterior:   k e_k = sum_{i=1..k} (-1)^(i-1) psi_i e_{k-i}
// where psi_i = adams(f, i).  When the input takes algebraic-integer values
// (any genuine character does) every recurrence step must as well; a failure
// of that integrality is reported as table corruption.
inline std::vector<ClassFunction> newton_powers(const ClassFunction& f, std::int64_t k,
                                                bool alternating, const char* what) {
    const CharacterTable& t = *f.table;
    const bool expect_integral = std::all_of(f.values.begin(), f.values.end(),
                                             [](const Cyclotomic& v) { return v.is_algebraic_integer(); });
    std::vector<ClassFunction> adams_cache;
    adams_cache.reserve(static_cast<std::size_t>(k) + 1);
    adams_cache.push_back(trivial_character(t));  // unused slot for i = 0
    for (std::int64_t i = 1; i <= k; ++i) adams_cache.push_back(adams(f, i));

    std::vector<ClassFunction> powers;
    powers.reserve(static_cast<std::size_t>(k) + 1);
    powers.push_back(trivial_character(t));
    for (std::int64_t m = 1; m <= k; ++m) {
        std::vector<Cyclotomic> acc(t.class_count());
        for (std::int64_t i = 1; i <= m; ++i) {
            const bool negate = alternating && i % 2 == 0;
            const auto& psi = adams_cache[static_cast<std::size_t>(i)];
            const auto& prev = powers[static_cast<std::size_t>(m - i)];
            for (std::size_t c = 0; c < acc.size(); ++c) {
                Cyclotomic term = psi[c] * prev[c];
                acc[c] += negate ? -term : term;
            }
        }
        const Rat inv(1, m);
        for (auto& v : acc) {
            v = v.scaled(inv);
            if (expect_integral && !v.is_algebraic_integer())
                throw ExactnessError(std::string(what) + ": division by " + std::to_string(m) +
                                     " is not exact (corrupt table data)");
        }
        powers.emplace_back(t, std::move(acc));
    }
    return powers;
}

}  // namespace detail

/// Characters of all symmetric powers Sym^0(f) .. Sym^k(f) in one pass.
inline std::vector<ClassFunction> sym_powers_up_to(const ClassFunction& f, std::int64_t k) {
    return detail::newton_powers(f, k, /*alternating=*/false, "sym_power");
}

inline ClassFunction sym_power(const ClassFunction& f, std::int64_t k) {
    if (k < 0) throw Error("sym_power: negative exponent");
    return sym_powers_up_to(f, k).back();
}

inline ClassFunction ext_power(const ClassFunction& f, std::int64_t k) {
    if (k < 0) throw Error("ext_power: negative exponent");
    return detail::newton_powers(f, k, /*alternating=*/true, "ext_power").back();
}

/// Exact multiplicities of f with respect to the irreducibles:
/// mult_i = (1/|G|) sum_c size(c) f(c) conj(chi_i(c)).  Any non-integral or
/// negative multiplicity, or a reconstruction mismatch, is a hard error; a
/// certifier must refuse rather than round.
inline Decomposition decompose(const ClassFunction& f) {
    const CharacterTable& t = *f.table;
    Decomposition d;
    d.table = &t;
    d.multiplicities.reserve(t.irreducible_count());
    std::vector<Cyclotomic> conj_row(t.class_count());
    for (std::size_t i = 0; i < t.irreducible_count(); ++i) {
        const auto& irr = t.irreducibles()[i];
        for (std::size_t c = 0; c < t.class_count(); ++c) conj_row[c] = irr.values[c].conjugate();
        const Cyclotomic ip = weighted_inner_product(t, f.values, conj_row);
        const auto r = ip.as_rational();
        if (!r || !is_integer(*r))
            throw ExactnessError("non-integral multiplicity for irreducible \"" + irr.name + "\"");
        if (*r < 0)
            throw ExactnessError("negative multiplicity for irreducible \"" + irr.name + "\"");
        d.multiplicities.push_back(to_int64(numerator(*r), "multiplicity"));
        d.dimension += Int(d.multiplicities.back()) * Int(t.degree(i));
    }
    // exact reconstruction: sum mult_i chi_i must reproduce f
    for (std::size_t c = 0; c < t.class_count(); ++c) {
        Cyclotomic sum;
        for (std::size_t i = 0; i < t.irreducible_count(); ++i) {
            if (d.multiplicities[i] == 0) continue;
            sum += t.irreducibles()[i].values[c].scaled(Rat(d.multiplicities[i]));
        }
        if (sum != f[c])
            throw ExactnessError("decomposition does not reconstruct the input at class " +
                                 std::to_string(c));
    }
    return d;
}

/// Constituent dimensions of Sym^k of the designated representation.
inline DimensionProfile delta_profile(const CharacterTable& t, std::int64_t k) {
    if (k < 1 || k > t.k_max() - 1)
        throw Error("delta_profile: k must lie in 1.." + std::to_string(t.k_max() - 1));
    return decompose(sym_power(irreducible_character(t, t.designated_index()), k))
        .dimension_profile();
}

/// Number of one-dimensional constituents (with multiplicity) of Sym^d of the
/// designated representation: the semi-invariants of degree d.
inline std::int64_t semi_invariant_count(const CharacterTable& t, std::int64_t d) {
    if (d < 1 || d > t.k_max() - 1)
        throw Error("semi_invariant_count: degree must lie in 1.." + std::to_string(t.k_max() - 1));
    const Decomposition dec =
        decompose(sym_power(irreducible_character(t, t.designated_index()), d));
    std::int64_t count = 0;
    for (std::size_t i = 0; i < dec.multiplicities.size(); ++i)
        if (t.degree(i) == 1) count += dec.multiplicities[i];
    return count;
}

struct CenterDimsReport {
    bool ok = true;
    std::string offender;  // name of the first violating irreducible when !ok
};

/// Checks that every irreducible on which some central element (a size-1
/// class other than the identity) acts by a non-trivial scalar has degree
/// divisible by 9.  Vacuously true without non-identity central classes.
inline CenterDimsReport verify_center_dims(const CharacterTable& t) {
    for (std::size_t c = 1; c < t.class_count(); ++c) {
        if (t.classes()[c].size != 1) continue;
        for (std::size_t i = 0; i < t.irreducible_count(); ++i) {
            const auto& irr = t.irreducibles()[i];
            // central elements act by a scalar; it is trivial iff chi(c) = chi(1)
            if (irr.values[c] != irr.values[0] && t.degree(i) % 9 != 0)
                return {false, irr.name};
        }
    }
    return {true, {}};
}

}  // namespace excsing
