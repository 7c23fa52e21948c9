#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace excsing {

// All exact scalar arithmetic runs on arbitrary-precision rationals.
// There is no floating-point fallback anywhere in the library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files (JSON shape, missing fields, bad numbers).
struct ParseError : Error {
    using Error::Error;
};

// Structurally well-formed data that violates a declared invariant
// (orthogonality, size sums, missing power maps, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Arithmetic that must come out integral did not (corrupt table data).
struct ExactnessError : Error {
    using Error::Error;
};

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline std::optional<Int> as_integer(const Rat& q) {
    if (!is_integer(q)) return std::nullopt;
    return numerator(q);
}

inline std::int64_t to_int64(const Int& v, const char* what = "integer") {
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw Error(std::string(what) + " out of 64-bit range: " + v.str());
    return static_cast<std::int64_t>(v);
}

inline Int binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // always exact: r is C(n, i+1) * (i+1)! / ... at each step
    }
    return r;
}

// C(n, k) for the small values used by the sieve (fits comfortably in 64 bits).
inline std::int64_t binomial64(std::int64_t n, std::int64_t k) {
    return to_int64(binomial(n, k), "binomial");
}

inline std::string rat_to_string(const Rat& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace excsing
