#pragma once

// Equidistribution statistics and the non-normality certificate.
//
// With Q built from f and f(0) = 0, the p-th orbit point of x_alpha under Q is
// x of alpha shifted by f(p), so its leading bit is alpha(f(p)). Block e of f
// was filled with positions where program e reads a single bit k_e, which
// puts 2*3^e of the first 3^{e+1} orbit points on one side of 1/2.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantornorm/cantor.hpp"
#include "cantornorm/construction.hpp"
#include "cantornorm/errors.hpp"
#include "cantornorm/programs.hpp"
#include "cantornorm/rational.hpp"

namespace cantornorm {

struct FrequencyReport {
    std::size_t n = 0;
    Rational lo = 0;
    Rational hi = 1;
    std::size_t hits = 0;
    Rational fraction = 0;
};

inline FrequencyReport interval_frequency(std::span<const Rational> points, const Rational& lo, const Rational& hi) {
    if (!(lo >= 0 && lo < hi && hi <= 1)) {
        throw DomainError("interval [" + to_string(lo) + ", " + to_string(hi) + ") is not a subinterval of [0,1)");
    }
    if (points.empty()) throw DomainError("empty sample");
    FrequencyReport r;
    r.n = points.size();
    r.lo = lo;
    r.hi = hi;
    r.hits = static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [&](const Rational& x) { return lo <= x && x < hi; }));
    r.fraction = Rational(r.hits, r.n);
    return r;
}

/// D*_n = max_i max(i/n - x_(i), x_(i) - (i-1)/n) over the sorted sample.
inline Rational star_discrepancy(std::span<const Rational> points) {
    if (points.empty()) throw DomainError("empty sample");
    std::vector<Rational> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    const Rational n(sorted.size());
    Rational best = 0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        const Rational& x = sorted[i - 1];
        best = std::max(best, Rational(i) / n - x);
        best = std::max(best, x - Rational(i - 1) / n);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Witness

struct WitnessReport {
    std::size_t program_index = 0;
    std::uint64_t checkpoint = 0;   // N = 3^{e+1}
    std::uint8_t chosen_bit = 0;    // k_e
    std::uint64_t low_count = 0;    // p < N with alpha(f(p)) = 0, orbit point in [0, 1/2)
    std::uint64_t high_count = 0;   // p < N with alpha(f(p)) = 1, orbit point in [1/2, 1)
    Rational fraction_low = 0;
    Rational fraction_high = 0;
    bool pass = false;

    const Rational& chosen_fraction() const { return chosen_bit == 0 ? fraction_low : fraction_high; }
};

inline const Rational& witness_threshold() {
    static const Rational two_thirds(2, 3);
    return two_thirds;
}

inline WitnessReport witness_check(const Registry& registry, std::size_t e, const LimitFunction& f) {
    registry.entry(e);
    const std::uint64_t n = pow3_u64(static_cast<unsigned>(e) + 1);
    if (e >= f.chosen.size() || f.settled_through + 1 < n) {
        throw PreconditionError("witness for program " + std::to_string(e) + " needs f settled through " +
                                std::to_string(n - 1) + "; have " + std::to_string(f.settled_through));
    }
    WitnessReport w;
    w.program_index = e;
    w.checkpoint = n;
    w.chosen_bit = f.chosen[e];
    for (std::uint64_t p = 0; p < n; ++p) {
        if (registry.eval_limit(e, f.values[p]) == 0) {
            ++w.low_count;
        } else {
            ++w.high_count;
        }
    }
    w.fraction_low = Rational(w.low_count, n);
    w.fraction_high = Rational(w.high_count, n);
    w.pass = w.chosen_fraction() >= witness_threshold();
    return w;
}

/// Orbit points y_0..y_{n-1} of program e's real under Q from f, exactly.
/// The bit prefix is long enough that every y_p has the same leading bit as
/// the infinite sequence shifted by f(p).
inline std::vector<Rational> program_orbit(const Registry& registry, std::size_t e, const LimitFunction& f,
                                           std::size_t n) {
    if (n == 0) return {};
    const BasicSequence q = basic_sequence_from(f, n - 1);
    const Bits alpha = registry.prefix(e, f(n - 1) + 1);
    return orbit(value_of_bits(alpha).value(), q, n - 1);
}

struct CheckpointDeviation {
    WitnessReport witness;
    FrequencyReport low_half;   // frequency of [0, 1/2) among y_0..y_{N-1}
    Rational deviation = 0;     // |fraction - 1/2|
    bool deviates = false;      // deviation >= 1/6
};

struct NonNormalityReport {
    std::size_t source = 0;
    std::vector<CheckpointDeviation> checkpoints;
    std::optional<bool> non_normal;  // unset when no checkpoint was requested
};

/// For each index i (all registered for the source's real), the witness at
/// 3^{i+1} and the [0, 1/2) frequency of the true orbit there.
inline NonNormalityReport non_normality_report(const Registry& registry, std::size_t source, const LimitFunction& f,
                                               std::span<const std::size_t> checkpoints) {
    NonNormalityReport report;
    report.source = source;
    const std::size_t root = registry.root_of(source);
    const Rational half(1, 2), sixth(1, 6);
    bool all = true;
    for (std::size_t i : checkpoints) {
        if (registry.root_of(i) != root) {
            throw ConfigError("index " + std::to_string(i) + " is not registered for the same real as " +
                              std::to_string(source));
        }
        CheckpointDeviation c;
        c.witness = witness_check(registry, i, f);
        const auto ys = program_orbit(registry, source, f, c.witness.checkpoint);
        c.low_half = interval_frequency(ys, 0, half);
        c.deviation = abs(c.low_half.fraction - half);
        c.deviates = c.deviation >= sixth;
        all = all && c.deviates && c.witness.pass;
        report.checkpoints.push_back(std::move(c));
    }
    if (!checkpoints.empty()) report.non_normal = all;
    return report;
}

}  // namespace cantornorm
