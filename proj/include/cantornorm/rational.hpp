#pragma once

// Exact number types shared by every module. Orbit products q_0...q_n grow
// without bound, so nothing here ever touches floating point except
// to_double(), which exists only for human-facing output.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "cantornorm/errors.hpp"

namespace cantornorm {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Integer pow2(std::uint64_t exponent) {
    Integer r = 1;
    r <<= exponent;
    return r;
}

inline Integer pow3(unsigned exponent) {
    Integer r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= 3;
    return r;
}

/// 3^k as a machine integer; callers keep k small enough (k <= 39).
constexpr std::uint64_t pow3_u64(unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r *= 3;
    return r;
}

/// Fractional part of a nonnegative rational.
inline Rational frac(const Rational& x) {
    Integer n = boost::multiprecision::numerator(x);
    Integer d = boost::multiprecision::denominator(x);
    return Rational(n % d, d);
}

/// "num/den" in lowest terms; integers print as "n/1" so the format is uniform.
inline std::string to_string(const Rational& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

/// Parses "n", "n/d" (optional surrounding whitespace, optional leading '-').
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s) {
        s = trim(s);
        std::string_view digits = s;
        if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
        if (digits.empty()) throw DomainError("malformed rational: '" + std::string(text) + "'");
        for (char c : digits) {
            if (c < '0' || c > '9') {
                throw DomainError("malformed rational: '" + std::string(text) + "'");
            }
        }
        return Integer(std::string(s));
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace cantornorm
