#pragma once

// Stock bit sequences used to populate registries: constants, periodic
// patterns, finite tables, binary expansions of rationals, the base-2
// Champernowne sequence and oracle reads. Every generator is total and
// random access, so a program can be evaluated at any position without
// materialising a prefix.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cantornorm/errors.hpp"
#include "cantornorm/oracle.hpp"

namespace cantornorm {

using Bits = std::vector<std::uint8_t>;

/// Digit `p` of the concatenation of the base-b numerals of 0, 1, 2, ...
/// (no leading zeros; the numeral of 0 is the single digit 0).
inline unsigned champernowne_digit_at(unsigned base, std::uint64_t p) {
    if (base < 2) throw DomainError("champernowne base must be >= 2");
    if (p == 0) return 0;
    p -= 1;
    // Numerals of length L run from base^(L-1) to base^L - 1.
    std::uint64_t first = 1;
    for (unsigned len = 1;; ++len) {
        const std::uint64_t count = first * (base - 1);
        if (p / len < count) {
            const std::uint64_t value = first + p / len;
            unsigned drop = len - 1 - static_cast<unsigned>(p % len);
            std::uint64_t v = value;
            for (unsigned i = 0; i < drop; ++i) v /= base;
            return static_cast<unsigned>(v % base);
        }
        p -= count * len;
        first *= base;
    }
}

inline std::vector<unsigned> champernowne_bits(unsigned base, std::size_t n) {
    if (base < 2) throw DomainError("champernowne base must be >= 2");
    std::vector<unsigned> out;
    out.reserve(n);
    for (std::uint64_t value = 0; out.size() < n; ++value) {
        std::vector<unsigned> numeral;
        std::uint64_t v = value;
        do {
            numeral.push_back(static_cast<unsigned>(v % base));
            v /= base;
        } while (v != 0);
        for (auto it = numeral.rbegin(); it != numeral.rend() && out.size() < n; ++it) {
            out.push_back(*it);
        }
    }
    return out;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow2_mod(std::uint64_t k, std::uint64_t m) {
    std::uint64_t result = 1 % m, base = 2 % m;
    while (k != 0) {
        if (k & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        k >>= 1;
    }
    return result;
}

}  // namespace detail

/// Bit k (0-based, weight 2^-(k+1)) of the terminating-preferred binary
/// expansion of num/den.
inline std::uint8_t rational_bit_at(std::uint64_t num, std::uint64_t den, std::uint64_t k) {
    if (den == 0 || num >= den) throw DomainError("rational bits need 0 <= p < q");
    // Remainder after k steps of long division is num * 2^k mod den.
    const std::uint64_t r = detail::mulmod(num % den, detail::pow2_mod(k, den), den);
    return static_cast<std::uint8_t>(static_cast<unsigned __int128>(r) * 2 >= den);
}

inline Bits rational_bits(std::uint64_t num, std::uint64_t den, std::size_t n) {
    if (den == 0 || num >= den) throw DomainError("rational bits need 0 <= p < q");
    Bits out;
    out.reserve(n);
    unsigned __int128 r = num;
    for (std::size_t i = 0; i < n; ++i) {
        r *= 2;
        if (r >= den) {
            out.push_back(1);
            r -= den;
        } else {
            out.push_back(0);
        }
    }
    return out;
}

inline Bits periodic_bits(const Bits& pattern, std::size_t n) {
    if (pattern.empty()) throw DomainError("periodic pattern must be nonempty");
    Bits out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = pattern[i % pattern.size()];
    return out;
}

// ---------------------------------------------------------------------------
// Generator specifications

struct ConstantGen {
    std::uint8_t bit = 0;
    friend bool operator==(const ConstantGen&, const ConstantGen&) = default;
};

struct PeriodicGen {
    Bits pattern;
    friend bool operator==(const PeriodicGen&, const PeriodicGen&) = default;
};

/// Explicit bits for positions [0, prefix.size()), `fill` afterwards.
struct TableGen {
    Bits prefix;
    std::uint8_t fill = 0;
    friend bool operator==(const TableGen&, const TableGen&) = default;
};

struct RationalGen {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    friend bool operator==(const RationalGen&, const RationalGen&) = default;
};

struct ChampernowneGen {
    friend bool operator==(const ChampernowneGen&, const ChampernowneGen&) = default;
};

/// Bit (p + offset) of the oracle, optionally complemented.
struct OracleBitGen {
    std::uint64_t offset = 0;
    bool invert = false;
    friend bool operator==(const OracleBitGen&, const OracleBitGen&) = default;
};

using GeneratorSpec =
    std::variant<ConstantGen, PeriodicGen, TableGen, RationalGen, ChampernowneGen, OracleBitGen>;

inline void validate(const GeneratorSpec& spec) {
    auto bad_bit = [](std::uint8_t b) { return b > 1; };
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, ConstantGen>) {
                if (bad_bit(g.bit)) throw DomainError("constant bit must be 0 or 1");
            } else if constexpr (std::is_same_v<G, PeriodicGen>) {
                if (g.pattern.empty()) throw DomainError("periodic pattern must be nonempty");
                for (auto b : g.pattern)
                    if (bad_bit(b)) throw DomainError("pattern bits must be 0 or 1");
            } else if constexpr (std::is_same_v<G, TableGen>) {
                if (bad_bit(g.fill)) throw DomainError("table default must be 0 or 1");
                for (auto b : g.prefix)
                    if (bad_bit(b)) throw DomainError("table bits must be 0 or 1");
            } else if constexpr (std::is_same_v<G, RationalGen>) {
                if (g.den == 0 || g.num >= g.den)
                    throw DomainError("rational generator needs 0 <= p < q");
            }
        },
        spec);
}

inline bool needs_oracle(const GeneratorSpec& spec) {
    return std::holds_alternative<OracleBitGen>(spec);
}

/// The eventual bit at position p. `oracle` may be null unless the spec reads it.
inline std::uint8_t generator_bit(const GeneratorSpec& spec, std::uint64_t p, const Oracle* oracle) {
    return std::visit(
        [&](const auto& g) -> std::uint8_t {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, ConstantGen>) {
                return g.bit;
            } else if constexpr (std::is_same_v<G, PeriodicGen>) {
                return g.pattern[p % g.pattern.size()];
            } else if constexpr (std::is_same_v<G, TableGen>) {
                return p < g.prefix.size() ? g.prefix[p] : g.fill;
            } else if constexpr (std::is_same_v<G, RationalGen>) {
                return rational_bit_at(g.num, g.den, p);
            } else if constexpr (std::is_same_v<G, ChampernowneGen>) {
                return static_cast<std::uint8_t>(champernowne_digit_at(2, p));
            } else {
                if (oracle == nullptr) throw ConfigError("oracle-bit program evaluated without an oracle");
                return static_cast<std::uint8_t>(oracle->bit(p + g.offset) ^ (g.invert ? 1 : 0));
            }
        },
        spec);
}

inline std::string kind_name(const GeneratorSpec& spec) {
    static const char* const names[] = {"constant", "periodic", "table", "rational", "champernowne", "oracle"};
    return names[spec.index()];
}

}  // namespace cantornorm
