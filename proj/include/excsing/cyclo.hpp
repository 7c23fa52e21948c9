#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "excsing/rational.hpp"

namespace excsing {

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

namespace detail {

// x^n - 1 divided exactly by the product of the cyclotomic polynomials of
// all proper divisors; memoized because reduction hits the same moduli
// over and over.  Coefficients ascending, monic of degree phi(n).
inline const std::vector<Int>& cyclotomic_polynomial(std::int64_t n) {
    static std::map<std::int64_t, std::vector<Int>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // iterative so that cache misses for divisors fill in bottom-up
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<Int> num(d + 1);  // x^d - 1
        num[0] = -1;
        num[d] = 1;
        for (std::int64_t e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            const auto& phi_e = cache.at(e);
            // exact synthetic division by the monic phi_e
            std::vector<Int> quot(num.size() - phi_e.size() + 1);
            for (std::int64_t i = static_cast<std::int64_t>(quot.size()) - 1; i >= 0; --i) {
                Int c = num[i + phi_e.size() - 1];
                quot[i] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j + 1 < phi_e.size(); ++j)
                    num[i + j] -= c * phi_e[j];
                num[i + phi_e.size() - 1] = 0;
            }
            num = std::move(quot);
        }
        cache.emplace(d, std::move(num));
    }
    return cache.at(n);
}

// remainder of p modulo the n-th cyclotomic polynomial, in place
inline void reduce_mod_cyclotomic(std::vector<Rat>& p, std::int64_t n) {
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    if (p.size() > deg) {
        for (std::size_t i = p.size(); i-- > deg;) {
            if (p[i] == 0) continue;
            Rat c = p[i];
            p[i] = 0;
            for (std::size_t j = 0; j < deg; ++j) {
                if (phi[j] != 0) p[i - deg + j] -= c * Rat(phi[j]);
            }
        }
    }
    p.resize(deg);
}

}  // namespace detail

/// An element of the cyclotomic field Q(zeta_n), stored as the canonical
/// residue modulo the n-th cyclotomic polynomial in the power basis
/// 1, zeta, ..., zeta^(phi(n)-1).  Canonical form makes structural equality
/// coincide with field equality (for a fixed modulus), and values are
/// immutable once built, so concurrent reads need no synchronization.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1, Rat(0)) {}

    explicit Cyclotomic(const Rat& r) : n_(1), c_(1, r) {}
    explicit Cyclotomic(std::int64_t v) : n_(1), c_(1, Rat(v)) {}
    explicit Cyclotomic(const Int& v) : n_(1), c_(1, Rat(v)) {}

    /// Raw constructor: coefficient vector of arbitrary length over modulus n,
    /// reduced to canonical form.
    Cyclotomic(std::int64_t n, std::vector<Rat> coeffs) : n_(n), c_(std::move(coeffs)) {
        if (n_ < 1) throw Error("cyclotomic modulus must be positive");
        detail::reduce_mod_cyclotomic(c_, n_);
    }

    std::int64_t modulus() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// The rational value when this element lies in Q, absent otherwise.
    std::optional<Rat> as_rational() const {
        if (!is_rational()) return std::nullopt;
        return c_[0];
    }

    /// True when every canonical coefficient is a rational integer, i.e. the
    /// value lies in Z[zeta_n] (character values of finite groups always do).
    bool is_algebraic_integer() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return is_integer(x); });
    }

    /// The same value viewed in Q(zeta_m); m must be a multiple of the modulus.
    Cyclotomic lifted_to(std::int64_t m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) throw Error("cannot lift cyclotomic: modulus does not divide target");
        const std::int64_t step = m / n_;
        std::vector<Rat> p(static_cast<std::size_t>((c_.size() - 1) * step + 1), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
        return Cyclotomic(m, std::move(p));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        // rational factors need no convolution, only a lift of the other side
        const std::int64_t m = std::lcm(a.n_, b.n_);
        if (a.is_rational()) return b.lifted_to(m).scaled(a.c_[0]);
        if (b.is_rational()) return a.lifted_to(m).scaled(b.c_[0]);
        Cyclotomic x = a.lifted_to(m);
        Cyclotomic y = b.lifted_to(m);
        std::vector<Rat> p(x.c_.size() + y.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] != 0) p[i + j] += x.c_[i] * y.c_[j];
            }
        }
        return Cyclotomic(m, std::move(p));
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic scaled(const Rat& r) const {
        Cyclotomic out = *this;
        for (auto& x : out.c_) x *= r;
        return out;
    }

    /// Complex conjugate: the Galois automorphism zeta -> zeta^(-1).
    Cyclotomic conjugate() const {
        if (is_rational()) return *this;
        std::vector<Rat> p(static_cast<std::size_t>(n_), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            p[static_cast<std::size_t>((n_ - static_cast<std::int64_t>(i)) % n_)] += c_[i];
        }
        return Cyclotomic(n_, std::move(p));
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        const std::int64_t m = std::lcm(a.n_, b.n_);
        return a.lifted_to(m).c_ == b.lifted_to(m).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

private:
    static std::pair<Cyclotomic, Cyclotomic> to_common(const Cyclotomic& a, const Cyclotomic& b) {
        const std::int64_t m = std::lcm(a.n_, b.n_);
        return {a.lifted_to(m), b.lifted_to(m)};
    }

    std::int64_t n_;
    std::vector<Rat> c_;
};

/// zeta_n^k, exponent taken mod n.
inline Cyclotomic zeta(std::int64_t n, std::int64_t k) {
    if (n < 1) throw Error("zeta: modulus must be positive");
    k %= n;
    if (k < 0) k += n;
    std::vector<Rat> p(static_cast<std::size_t>(k) + 1, Rat(0));
    p.back() = 1;
    return Cyclotomic(n, std::move(p));
}

inline Cyclotomic conj(const Cyclotomic& a) { return a.conjugate(); }

inline std::optional<Rat> as_rational(const Cyclotomic& a) { return a.as_rational(); }

// --- textual form ---------------------------------------------------------
//
// {"n": <modulus>, "terms": [[k, num, den], ...]}  meaning  sum (num/den) zeta_n^k.
// A bare integer is accepted on input as shorthand for that rational value.

namespace detail {

inline nlohmann::ordered_json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int int_from_json(const nlohmann::json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw ParseError(std::string("expected integer for ") + what);
}

}  // namespace detail

inline nlohmann::ordered_json cyclo_to_json(const Cyclotomic& a) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const Rat& c = a.coeffs()[i];
        if (c == 0) continue;
        terms.push_back({static_cast<std::int64_t>(i), detail::int_to_json(numerator(c)),
                         detail::int_to_json(denominator(c))});
    }
    return nlohmann::ordered_json{{"n", a.modulus()}, {"terms", std::move(terms)}};
}

inline Cyclotomic cyclo_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Cyclotomic(Rat(j.get<std::int64_t>()));
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw ParseError("cyclotomic value must be an integer or {\"n\",\"terms\"} object");
    const std::int64_t n = j.at("n").get<std::int64_t>();
    if (n < 1) throw ParseError("cyclotomic modulus must be positive");
    std::vector<Rat> p(static_cast<std::size_t>(n), Rat(0));
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("cyclotomic term must be [k, num, den]");
        std::int64_t k = t[0].get<std::int64_t>();
        Int num = detail::int_from_json(t[1], "term numerator");
        Int den = detail::int_from_json(t[2], "term denominator");
        if (den == 0) throw ParseError("cyclotomic term with zero denominator");
        k %= n;
        if (k < 0) k += n;
        p[static_cast<std::size_t>(k)] += Rat(num, den);
    }
    return Cyclotomic(n, std::move(p));
}

}  // namespace excsing
