#pragma once

#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "excsing/cyclo.hpp"
#include "excsing/rational.hpp"

namespace excsing {

struct ConjClass {
    std::int64_t size = 0;
    std::int64_t element_order = 0;
};

struct Irreducible {
    std::string name;
    std::vector<Cyclotomic> values;  // one per conjugacy class, class 0 = identity
};

struct ValidationOptions {
    // power maps must be present for every prime <= k_max and every prime
    // dividing the group order; symmetric powers are then available up to
    // exponent k_max - 1
    std::int64_t k_max = 13;
};

/// A validated finite-group character table: class data, prime power maps and
/// the full matrix of irreducible characters with exact cyclotomic values.
/// Immutable after construction; all consistency checks below run up front so
/// downstream computations may assume them.
class CharacterTable {
public:
    static CharacterTable from_json(const nlohmann::json& j, ValidationOptions opts = {});
    static CharacterTable parse(std::istream& in, ValidationOptions opts = {});

    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return exponent_; }
    std::int64_t k_max() const { return k_max_; }
    const std::vector<ConjClass>& classes() const { return classes_; }
    std::size_t class_count() const { return classes_.size(); }
    const std::vector<Irreducible>& irreducibles() const { return irreducibles_; }
    std::size_t irreducible_count() const { return irreducibles_.size(); }
    std::size_t designated_index() const { return designated_; }
    const Irreducible& designated() const { return irreducibles_[designated_]; }

    /// Degree of the i-th irreducible (its value at the identity class).
    std::int64_t degree(std::size_t i) const { return degrees_[i]; }

    bool has_power_map(std::int64_t p) const { return power_maps_.count(p) != 0; }
    const std::vector<std::int64_t>& power_map(std::int64_t p) const {
        auto it = power_maps_.find(p);
        if (it == power_maps_.end())
            throw Error("no power map for prime " + std::to_string(p));
        return it->second;
    }

private:
    CharacterTable() = default;
    void validate();

    std::int64_t order_ = 0;
    std::int64_t exponent_ = 0;
    std::int64_t k_max_ = 13;
    std::vector<ConjClass> classes_;
    std::map<std::int64_t, std::vector<std::int64_t>> power_maps_;
    std::vector<Irreducible> irreducibles_;
    std::vector<std::int64_t> degrees_;
    std::size_t designated_ = 0;
};

/// Class of g^k for g in class c, by composing prime power maps along the
/// factorization of k.  k = 1 is the identity map.
inline std::int64_t power_class(const CharacterTable& t, std::int64_t c, std::int64_t k) {
    if (k < 1) throw Error("power_class: exponent must be >= 1");
    if (c < 0 || c >= static_cast<std::int64_t>(t.class_count()))
        throw Error("power_class: class index out of range");
    std::int64_t result = c;
    std::int64_t rest = k;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        while (rest % p == 0) {
            result = t.power_map(p)[static_cast<std::size_t>(result)];
            rest /= p;
        }
    }
    if (rest > 1) result = t.power_map(rest)[static_cast<std::size_t>(result)];
    return result;
}

/// A function on conjugacy classes with cyclotomic values (a character, a
/// virtual character, or any intermediate of the plethysm recurrences).
struct ClassFunction {
    const CharacterTable* table = nullptr;
    std::vector<Cyclotomic> values;

    ClassFunction() = default;
    ClassFunction(const CharacterTable& t, std::vector<Cyclotomic> v)
        : table(&t), values(std::move(v)) {
        if (values.size() != t.class_count())
            throw Error("class function length does not match class count");
    }

    const Cyclotomic& operator[](std::size_t c) const { return values[c]; }

    friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
        return a.table == b.table && a.values == b.values;
    }
};

/// Trivial character (1 on every class).
inline ClassFunction trivial_character(const CharacterTable& t) {
    return ClassFunction(t, std::vector<Cyclotomic>(t.class_count(), Cyclotomic(1)));
}

inline ClassFunction irreducible_character(const CharacterTable& t, std::size_t i) {
    return ClassFunction(t, t.irreducibles()[i].values);
}

/// (1/|G|) * sum over classes of size(c) * f(c) * g_conj(c); g_conj must
/// already be conjugated.  Rational-valued terms are accumulated separately
/// so tables with mostly integer entries avoid cyclotomic lifting entirely.
inline Cyclotomic weighted_inner_product(const CharacterTable& t,
                                         std::span<const Cyclotomic> f,
                                         std::span<const Cyclotomic> g_conj) {
    Rat rational_part = 0;
    Cyclotomic irrational_part;
    bool have_irrational = false;
    for (std::size_t c = 0; c < t.class_count(); ++c) {
        const Rat w(t.classes()[c].size);
        const auto fa = f[c].as_rational();
        const auto gb = g_conj[c].as_rational();
        if (fa && gb) {
            rational_part += w * (*fa) * (*gb);
        } else {
            Cyclotomic term = (f[c] * g_conj[c]).scaled(w);
            if (have_irrational) {
                irrational_part += term;
            } else {
                irrational_part = std::move(term);
                have_irrational = true;
            }
        }
    }
    const Rat inv(1, t.order());
    if (!have_irrational) return Cyclotomic(rational_part * inv);
    return (irrational_part + Cyclotomic(rational_part)).scaled(inv);
}

// --- parsing and validation -------------------------------------------------

inline CharacterTable CharacterTable::parse(std::istream& in, ValidationOptions opts) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("table is not valid JSON: ") + e.what());
    }
    return from_json(j, opts);
}

inline CharacterTable CharacterTable::from_json(const nlohmann::json& j, ValidationOptions opts) {
    auto require = [&](const char* key) -> const nlohmann::json& {
        if (!j.is_object() || !j.contains(key))
            throw ParseError(std::string("table is missing required field \"") + key + "\"");
        return j.at(key);
    };

    CharacterTable t;
    t.k_max_ = opts.k_max;
    try {
        t.order_ = require("order").get<std::int64_t>();
        t.exponent_ = require("exponent").get<std::int64_t>();
        for (const auto& jc : require("classes")) {
            ConjClass c;
            c.size = jc.at("size").get<std::int64_t>();
            c.element_order = jc.at("elementOrder").get<std::int64_t>();
            t.classes_.push_back(c);
        }
        for (const auto& [key, val] : require("powerMaps").items()) {
            std::int64_t p = std::stoll(key);
            std::vector<std::int64_t> map;
            for (const auto& v : val) map.push_back(v.get<std::int64_t>());
            t.power_maps_.emplace(p, std::move(map));
        }
        for (const auto& ji : require("irreducibles")) {
            Irreducible irr;
            irr.name = ji.at("name").get<std::string>();
            for (const auto& jv : ji.at("values")) irr.values.push_back(cyclo_from_json(jv));
            t.irreducibles_.push_back(std::move(irr));
        }
        const std::string designated = require("designated").get<std::string>();
        bool found = false;
        for (std::size_t i = 0; i < t.irreducibles_.size(); ++i) {
            if (t.irreducibles_[i].name == designated) {
                if (found) throw ParseError("designated name \"" + designated + "\" is ambiguous");
                t.designated_ = i;
                found = true;
            }
        }
        if (!found) throw ParseError("designated irreducible \"" + designated + "\" not found");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed table field: ") + e.what());
    }
    t.validate();
    return t;
}

inline void CharacterTable::validate() {
    if (order_ < 1) throw ValidationError("group order must be positive");
    if (classes_.empty()) throw ValidationError("table has no conjugacy classes");
    if (classes_[0].size != 1 || classes_[0].element_order != 1)
        throw ValidationError("class 0 must be the identity class (size 1, element order 1)");

    std::int64_t size_sum = 0;
    std::int64_t order_lcm = 1;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        const auto& cls = classes_[c];
        if (cls.size < 1 || cls.element_order < 1)
            throw ValidationError("class " + std::to_string(c) + " has non-positive size or order");
        if (order_ % cls.size != 0)
            throw ValidationError("size of class " + std::to_string(c) + " does not divide the group order");
        if (order_ % cls.element_order != 0)
            throw ValidationError("element order of class " + std::to_string(c) +
                                  " does not divide the group order");
        size_sum += cls.size;
        order_lcm = std::lcm(order_lcm, cls.element_order);
    }
    if (size_sum != order_)
        throw ValidationError("class sizes sum to " + std::to_string(size_sum) +
                              ", expected the group order " + std::to_string(order_));
    if (exponent_ != order_lcm)
        throw ValidationError("exponent " + std::to_string(exponent_) +
                              " is not the lcm of element orders (" + std::to_string(order_lcm) + ")");

    // power maps: every prime <= k_max and every prime divisor of the order
    std::vector<std::int64_t> required_primes;
    for (std::int64_t p = 2; p <= k_max_; ++p) {
        bool prime = p >= 2;
        for (std::int64_t q = 2; q * q <= p; ++q)
            if (p % q == 0) { prime = false; break; }
        if (prime) required_primes.push_back(p);
    }
    for (std::int64_t p : prime_factors(order_))
        if (p > k_max_) required_primes.push_back(p);
    for (std::int64_t p : required_primes) {
        auto it = power_maps_.find(p);
        if (it == power_maps_.end())
            throw ValidationError("missing power map for prime " + std::to_string(p));
        const auto& map = it->second;
        if (map.size() != classes_.size())
            throw ValidationError("power map for prime " + std::to_string(p) + " has wrong length");
        for (std::size_t c = 0; c < map.size(); ++c) {
            if (map[c] < 0 || map[c] >= static_cast<std::int64_t>(classes_.size()))
                throw ValidationError("power map for prime " + std::to_string(p) +
                                      " has out-of-range image at class " + std::to_string(c));
            const std::int64_t o = classes_[c].element_order;
            const std::int64_t expected = o / std::gcd(o, p);
            if (classes_[static_cast<std::size_t>(map[c])].element_order != expected)
                throw ValidationError("power map for prime " + std::to_string(p) +
                                      " is inconsistent with element orders at class " + std::to_string(c));
        }
        if (map[0] != 0)
            throw ValidationError("power map for prime " + std::to_string(p) +
                                  " does not fix the identity class");
    }

    if (irreducibles_.size() != classes_.size())
        throw ValidationError("table has " + std::to_string(irreducibles_.size()) +
                              " irreducibles but " + std::to_string(classes_.size()) + " classes");

    Int degree_square_sum = 0;
    degrees_.clear();
    for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
        const auto& irr = irreducibles_[i];
        if (irr.values.size() != classes_.size())
            throw ValidationError("irreducible \"" + irr.name + "\" has wrong number of values");
        const auto deg = irr.values[0].as_rational();
        if (!deg || !is_integer(*deg) || *deg <= 0)
            throw ValidationError("irreducible \"" + irr.name +
                                  "\" has a degree that is not a positive integer");
        degrees_.push_back(to_int64(numerator(*deg), "degree"));
        degree_square_sum += Int(degrees_.back()) * Int(degrees_.back());
    }
    if (degree_square_sum != order_)
        throw ValidationError("sum of squared degrees is " + degree_square_sum.str() +
                              ", expected the group order " + std::to_string(order_));

    // first orthogonality, exact
    std::vector<std::vector<Cyclotomic>> conj_rows(irreducibles_.size());
    for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
        conj_rows[i].reserve(classes_.size());
        for (const auto& v : irreducibles_[i].values) conj_rows[i].push_back(v.conjugate());
    }
    for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
        for (std::size_t k = i; k < irreducibles_.size(); ++k) {
            const Cyclotomic ip =
                weighted_inner_product(*this, irreducibles_[i].values, conj_rows[k]);
            const Cyclotomic expected(i == k ? 1 : 0);
            if (ip != expected)
                throw ValidationError("row orthogonality failed for (" + std::to_string(i) + "," +
                                      std::to_string(k) + ")");
        }
    }
}

}  // namespace excsing
