#pragma once

// A finite registry of effectively presented binary sequences together with
// the step-bounded evaluation of each one. Every entry pairs a total
// generator (the value a position eventually takes) with a declared halting
// time per position; before that many steps the position reads 0. A value
// therefore changes at most once as the step budget grows, and only from 0
// to 1.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantornorm/errors.hpp"
#include "cantornorm/generators.hpp"
#include "cantornorm/oracle.hpp"

namespace cantornorm {

using Steps = std::uint64_t;

struct ConstantHalt {
    Steps steps = 0;
    friend bool operator==(const ConstantHalt&, const ConstantHalt&) = default;
};

/// slope * p + offset, saturating at the top of the range.
struct LinearHalt {
    Steps slope = 0;
    Steps offset = 0;
    friend bool operator==(const LinearHalt&, const LinearHalt&) = default;
};

struct TableHalt {
    std::vector<Steps> prefix;
    Steps fill = 0;
    friend bool operator==(const TableHalt&, const TableHalt&) = default;
};

using HaltRule = std::variant<ConstantHalt, LinearHalt, TableHalt>;

namespace detail {

inline Steps saturating_linear(Steps slope, Steps offset, std::uint64_t p) {
    constexpr Steps top = std::numeric_limits<Steps>::max();
    if (slope != 0 && p > (top - offset) / slope) return top;
    return slope * p + offset;
}

}  // namespace detail

inline Steps halt_steps(const HaltRule& rule, std::uint64_t p) {
    return std::visit(
        [&](const auto& h) -> Steps {
            using H = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<H, ConstantHalt>) {
                return h.steps;
            } else if constexpr (std::is_same_v<H, LinearHalt>) {
                return detail::saturating_linear(h.slope, h.offset, p);
            } else {
                return p < h.prefix.size() ? h.prefix[p] : h.fill;
            }
        },
        rule);
}

/// max of halt_steps over positions 0..max_position.
inline Steps max_halt_steps(const HaltRule& rule, std::uint64_t max_position) {
    return std::visit(
        [&](const auto& h) -> Steps {
            using H = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<H, ConstantHalt>) {
                return h.steps;
            } else if constexpr (std::is_same_v<H, LinearHalt>) {
                return detail::saturating_linear(h.slope, h.offset, max_position);
            } else {
                Steps best = 0;
                const auto covered = std::min<std::uint64_t>(h.prefix.size(), max_position + 1);
                for (std::uint64_t p = 0; p < covered; ++p) best = std::max(best, h.prefix[p]);
                if (max_position >= h.prefix.size()) best = std::max(best, h.fill);
                return best;
            }
        },
        rule);
}

struct ProgramEntry {
    std::size_t index = 0;
    GeneratorSpec generator;
    HaltRule halt;
    std::optional<std::size_t> alias_of;
};

class Registry {
public:
    Registry() = default;
    explicit Registry(std::optional<Oracle> oracle) : oracle_(std::move(oracle)) {}

    /// Registers a fresh program and returns its index.
    std::size_t add(GeneratorSpec generator, HaltRule halt = ConstantHalt{}) {
        validate(generator);
        const std::size_t e = entries_.size();
        entries_.push_back(ProgramEntry{e, std::move(generator), std::move(halt), std::nullopt});
        return e;
    }

    /// Registers a duplicate of `target`; aliases of aliases resolve to the root.
    std::size_t add_alias(std::size_t target) {
        const ProgramEntry& t = entry(target);
        const std::size_t root = t.alias_of.value_or(target);
        const std::size_t e = entries_.size();
        ProgramEntry copy{e, t.generator, t.halt, root};
        entries_.push_back(std::move(copy));
        return e;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    const ProgramEntry& entry(std::size_t e) const {
        if (e >= entries_.size()) {
            throw IndexOutOfRange("program index " + std::to_string(e) + " out of range (registry has " +
                                  std::to_string(entries_.size()) + " entries)");
        }
        return entries_[e];
    }

    const std::vector<ProgramEntry>& entries() const noexcept { return entries_; }

    const std::optional<Oracle>& oracle() const noexcept { return oracle_; }
    void set_oracle(std::optional<Oracle> oracle) { oracle_ = std::move(oracle); }

    /// Index of the entry a program duplicates, or its own index.
    std::size_t root_of(std::size_t e) const { return entry(e).alias_of.value_or(e); }

    /// Indices registered for the same real as `e`, ascending (including the root).
    std::vector<std::size_t> aliases_of(std::size_t e) const {
        const std::size_t root = root_of(e);
        std::vector<std::size_t> out;
        for (const auto& pe : entries_) {
            if (pe.alias_of.value_or(pe.index) == root) out.push_back(pe.index);
        }
        return out;
    }

    /// Step-bounded value: the generator's bit once `s` steps cover the
    /// position's halting time, 0 before.
    std::uint8_t eval_star(std::size_t e, Steps s, std::uint64_t p) const {
        const ProgramEntry& pe = entry(e);
        if (halt_steps(pe.halt, p) > s) return 0;
        return generator_bit(pe.generator, p, oracle_ ? &*oracle_ : nullptr);
    }

    /// Settled value.
    std::uint8_t eval_limit(std::size_t e, std::uint64_t p) const {
        return generator_bit(entry(e).generator, p, oracle_ ? &*oracle_ : nullptr);
    }

    /// Smallest budget from which eval_star agrees with eval_limit on 0..max_position.
    Steps settle_budget(std::size_t e, std::uint64_t max_position) const {
        return max_halt_steps(entry(e).halt, max_position);
    }

    /// Settled bits 0..n-1 of program e.
    Bits prefix(std::size_t e, std::size_t n) const {
        Bits out(n);
        for (std::size_t p = 0; p < n; ++p) out[p] = eval_limit(e, p);
        return out;
    }

    /// Throws ConfigError if a program reads the oracle and none is attached.
    void check_oracle() const {
        if (oracle_) return;
        for (const auto& pe : entries_) {
            if (needs_oracle(pe.generator)) {
                throw ConfigError("program " + std::to_string(pe.index) +
                                  " reads the oracle but no oracle is configured");
            }
        }
    }

private:
    std::vector<ProgramEntry> entries_;
    std::optional<Oracle> oracle_;
};

inline std::uint8_t eval_star(const Registry& r, std::size_t e, Steps s, std::uint64_t p) {
    return r.eval_star(e, s, p);
}

inline std::uint8_t eval_limit(const Registry& r, std::size_t e, std::uint64_t p) {
    return r.eval_limit(e, p);
}

inline Steps settle_budget(const Registry& r, std::size_t e, std::uint64_t max_position) {
    return r.settle_budget(e, max_position);
}

}  // namespace cantornorm
