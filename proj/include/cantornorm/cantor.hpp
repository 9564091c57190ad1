#pragma once

// Exact arithmetic for binary words, their shifts, Cantor series expansions
// and mod-1 orbits x, q_0 x, q_0 q_1 x, ... under a basic sequence.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantornorm/errors.hpp"
#include "cantornorm/generators.hpp"
#include "cantornorm/rational.hpp"

namespace cantornorm {

/// Finite prefix of an infinite 0/1 sequence.
using BitWord = Bits;

/// numerator / 2^exponent, kept unreduced so the exponent records the word length.
struct DyadicValue {
    Integer numerator = 0;
    std::uint64_t exponent = 0;

    Rational value() const { return Rational(numerator, pow2(exponent)); }

    friend bool operator==(const DyadicValue& a, const DyadicValue& b) { return a.value() == b.value(); }
};

/// Sum of w(n) * 2^-(n+1).
inline DyadicValue value_of_bits(std::span<const std::uint8_t> w) {
    DyadicValue v;
    v.exponent = w.size();
    for (auto b : w) {
        if (b > 1) throw DomainError("bit words hold only 0 and 1");
        v.numerator <<= 1;
        v.numerator += b;
    }
    return v;
}

/// Drops the first n bits.
inline BitWord shift(std::span<const std::uint8_t> w, std::size_t n) {
    if (n > w.size()) {
        throw PreconditionError("shift by " + std::to_string(n) + " exceeds word length " +
                                std::to_string(w.size()));
    }
    return BitWord(w.begin() + static_cast<std::ptrdiff_t>(n), w.end());
}

/// A sequence of integers q_n >= 2. Sequences built from exponents
/// (q_n = 2^s_n) remember them.
class BasicSequence {
public:
    BasicSequence() = default;

    static BasicSequence from_terms(std::vector<Integer> terms) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i] < 2) {
                throw DomainError("basic sequence term q_" + std::to_string(i) + " = " + terms[i].str() +
                                  " is below 2");
            }
        }
        BasicSequence q;
        q.terms_ = std::move(terms);
        return q;
    }

    static BasicSequence from_exponents(std::vector<std::uint64_t> exponents) {
        BasicSequence q;
        q.terms_.reserve(exponents.size());
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] < 1) {
                throw DomainError("basic sequence exponent s_" + std::to_string(i) + " is 0");
            }
            q.terms_.push_back(pow2(exponents[i]));
        }
        q.exponents_ = std::move(exponents);
        return q;
    }

    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    const Integer& operator[](std::size_t i) const { return terms_.at(i); }
    const std::vector<Integer>& terms() const noexcept { return terms_; }

    bool is_power_of_two() const noexcept { return exponents_.has_value(); }
    const std::vector<std::uint64_t>& exponents() const {
        if (!exponents_) throw PreconditionError("basic sequence was not built from exponents");
        return *exponents_;
    }

    /// s_0 + ... + s_n.
    std::uint64_t exponent_sum(std::size_t n) const {
        const auto& e = exponents();
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i <= n; ++i) sum += e.at(i);
        return sum;
    }

    BasicSequence prefix(std::size_t n) const {
        if (n > size()) throw PreconditionError("basic sequence prefix longer than the sequence");
        BasicSequence q;
        q.terms_.assign(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(n));
        if (exponents_) q.exponents_.emplace(exponents_->begin(), exponents_->begin() + static_cast<std::ptrdiff_t>(n));
        return q;
    }

    friend bool operator==(const BasicSequence& a, const BasicSequence& b) { return a.terms_ == b.terms_; }

private:
    std::vector<Integer> terms_;
    std::optional<std::vector<std::uint64_t>> exponents_;
};

struct CantorDigits {
    std::vector<Integer> digits;
    BasicSequence base;
};

namespace detail {

inline void require_unit_interval(const Rational& x) {
    if (x < 0 || x >= 1) throw DomainError("x = " + to_string(x) + " is outside [0,1)");
}

inline void require_length(const BasicSequence& q, std::size_t n) {
    if (q.size() < n) {
        throw PreconditionError("basic sequence has " + std::to_string(q.size()) + " terms, " +
                                std::to_string(n) + " needed");
    }
}

}  // namespace detail

/// First n digits of the greedy Cantor series expansion of x.
inline CantorDigits cantor_digits(const Rational& x, const BasicSequence& q, std::size_t n) {
    detail::require_unit_interval(x);
    detail::require_length(q, n);
    CantorDigits out;
    out.base = q.prefix(n);
    out.digits.reserve(n);
    Rational r = x;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational scaled = r * q[i];
        Integer a = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
        out.digits.push_back(a);
        r = scaled - Rational(a);
    }
    return out;
}

/// sum a_n / (q_0 ... q_n).
inline Rational cantor_value(const CantorDigits& d) {
    detail::require_length(d.base, d.digits.size());
    Rational sum = 0;
    Integer denom = 1;
    for (std::size_t i = 0; i < d.digits.size(); ++i) {
        if (d.digits[i] < 0 || d.digits[i] >= d.base[i]) {
            throw PreconditionError("digit a_" + std::to_string(i) + " = " + d.digits[i].str() +
                                    " is not in [0, q_" + std::to_string(i) + ")");
        }
        denom *= d.base[i];
        sum += Rational(d.digits[i], denom);
    }
    return sum;
}

/// (y_0, ..., y_n) with y_0 = x and y_{i+1} = q_i y_i mod 1.
inline std::vector<Rational> orbit(const Rational& x, const BasicSequence& q, std::size_t n) {
    detail::require_unit_interval(x);
    detail::require_length(q, n);
    std::vector<Rational> ys;
    ys.reserve(n + 1);
    ys.push_back(x);
    for (std::size_t i = 0; i < n; ++i) ys.push_back(frac(ys.back() * q[i]));
    return ys;
}

}  // namespace cantornorm
