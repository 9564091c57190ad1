#pragma once

// Staged diagonal construction of a strictly increasing f with f(0) = 0.
//
// f_s is built in blocks. Block t covers positions [3^t, 3^{t+1}) and is
// filled at stage t+1 by looking at program t with step budget s+1: from the
// positions above f_s(3^t - 1), take the 2*3^t least ones on which the
// program reads k, for the least k in {0,1} that has that many hits among the
// next 4*3^t positions. One of the two bits always does, so every block ends
// at most 4*3^t above the previous one and f_s(3^{t+1} - 1) <= 2(3^{t+1} - 1)
// whatever s is. That bound limits which program positions any f_s(p) can
// depend on, which is what makes the pointwise limit f certifiable from the
// declared halting times.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantornorm/cantor.hpp"
#include "cantornorm/errors.hpp"
#include "cantornorm/programs.hpp"
#include "cantornorm/rational.hpp"

namespace cantornorm {

/// Largest number of blocks materialised (3^14 ~ 4.8M positions).
inline constexpr unsigned kMaxAffordableStages = 14;

/// Block index of position p: p in [3^t, 3^{t+1}). Position 0 has none.
inline std::optional<unsigned> block_of(std::uint64_t p) {
    if (p == 0) return std::nullopt;
    unsigned t = 0;
    for (std::uint64_t hi = 3; p >= hi; hi *= 3) ++t;
    return t;
}

/// Smallest S with p < 3^S.
inline unsigned stages_covering(std::uint64_t p) {
    unsigned s = 0;
    for (std::uint64_t n = 1; p >= n; n *= 3) ++s;
    return s;
}

/// Largest position stage t+1 may inspect: 2(3^{t+1} - 1).
inline std::uint64_t scan_horizon(unsigned t) { return 2 * (pow3_u64(t + 1) - 1); }

struct StageFunction {
    unsigned stage = 0;                // s
    std::vector<std::uint64_t> values; // f_s on [0, 3^blocks)
    std::vector<std::uint8_t> chosen;  // k_t per built block

    std::size_t size() const noexcept { return values.size(); }
    unsigned blocks() const noexcept { return static_cast<unsigned>(chosen.size()); }

    /// Positions picked for block t, in increasing order.
    std::span<const std::uint64_t> block_positions(unsigned t) const {
        const auto lo = pow3_u64(t);
        return std::span<const std::uint64_t>(values).subspan(lo, 2 * lo);
    }
};

namespace detail {

inline void check_affordable(unsigned blocks) {
    if (blocks > kMaxAffordableStages) {
        throw ResourceLimit("construction needs " + std::to_string(blocks) + " stages; at most " +
                                std::to_string(kMaxAffordableStages) + " are affordable",
                            blocks);
    }
}

// Appends block t to `f`, reading program t with the given step budget.
inline void run_stage(const Registry& registry, Steps budget, unsigned t, StageFunction& f) {
    const std::uint64_t need = 2 * pow3_u64(t);
    const std::uint64_t start = f.values.back();
    const std::uint64_t window_end = start + 2 * need;

    std::vector<std::uint64_t> zeros, ones;
    zeros.reserve(need);
    ones.reserve(need);
    for (std::uint64_t p = start + 1; p <= window_end && zeros.size() < need; ++p) {
        if (registry.eval_star(t, budget, p) == 0) {
            zeros.push_back(p);
        } else if (ones.size() < need) {
            ones.push_back(p);
        }
    }

    const std::uint8_t k = zeros.size() >= need ? 0 : 1;
    const auto& picks = k == 0 ? zeros : ones;
    if (picks.size() < need) {
        // Unreachable: 4*3^t positions hold 2*3^t copies of one bit.
        throw Error("stage " + std::to_string(t + 1) + " found no bit with enough hits");
    }
    f.values.insert(f.values.end(), picks.begin(), picks.end());
    f.chosen.push_back(k);
}

}  // namespace detail

/// f_s restricted to its first `blocks` blocks, domain [0, 3^blocks). Block
/// t depends only on blocks before it, so this is bit-for-bit the prefix of
/// the full f_s; it lets s exceed the number of registered programs.
inline StageFunction build_stage_prefix(const Registry& registry, Steps s, unsigned blocks) {
    detail::check_affordable(blocks);
    if (registry.size() < blocks) {
        throw ConfigError("construction with " + std::to_string(blocks) + " stages needs " +
                          std::to_string(blocks) + " programs; registry has " + std::to_string(registry.size()));
    }
    StageFunction f;
    f.stage = static_cast<unsigned>(std::min<Steps>(s, std::numeric_limits<unsigned>::max()));
    f.values.reserve(pow3_u64(blocks));
    f.values.push_back(0);
    const Steps budget = s == std::numeric_limits<Steps>::max() ? s : s + 1;
    for (unsigned t = 0; t < blocks; ++t) detail::run_stage(registry, budget, t, f);
    return f;
}

/// f_s on [0, 3^s).
inline StageFunction build_stage_function(const Registry& registry, unsigned s) {
    return build_stage_prefix(registry, s, s);
}

// ---------------------------------------------------------------------------
// Bound check

struct BoundViolation {
    unsigned t = 0;
    std::string form;  // "step" or "closed"
    std::uint64_t position = 0;
    std::uint64_t value = 0;
    std::uint64_t bound = 0;
};

/// f(3^{t+1}) against 2(3^{t+1} - 1). This is the same bound read at the
/// first position of the next block; it does not follow from the stage rule
/// and can legitimately fail, so it is reported but never affects `ok`.
struct BlockStartCheck {
    unsigned t = 0;
    std::uint64_t value = 0;
    std::uint64_t bound = 0;
    bool holds = true;
};

struct BoundReport {
    bool ok = true;
    unsigned blocks_checked = 0;
    std::optional<BoundViolation> first_violation;
    std::vector<BlockStartCheck> block_start;
};

/// For every complete block t: f(3^{t+1}-1) <= 4*3^t + f(3^t-1) and
/// f(3^{t+1}-1) <= 2(3^{t+1}-1).
inline BoundReport verify_bound(std::span<const std::uint64_t> values) {
    BoundReport report;
    if (values.empty()) return report;
    for (unsigned t = 0;; ++t) {
        const std::uint64_t end = pow3_u64(t + 1) - 1;
        if (end >= values.size()) break;
        const std::uint64_t prev = values[pow3_u64(t) - 1];
        const std::uint64_t step_bound = 4 * pow3_u64(t) + prev;
        const std::uint64_t closed_bound = 2 * end;
        ++report.blocks_checked;
        if (!report.first_violation) {
            if (values[end] > step_bound) {
                report.first_violation = BoundViolation{t, "step", end, values[end], step_bound};
            } else if (values[end] > closed_bound) {
                report.first_violation = BoundViolation{t, "closed", end, values[end], closed_bound};
            }
        }
        if (end + 1 < values.size()) {
            report.block_start.push_back(BlockStartCheck{t, values[end + 1], closed_bound, values[end + 1] <= closed_bound});
        }
    }
    report.ok = !report.first_violation.has_value();
    return report;
}

inline BoundReport verify_bound(const StageFunction& f) { return verify_bound(f.values); }

// ---------------------------------------------------------------------------
// Limit

struct LimitFunction {
    std::vector<std::uint64_t> values;     // f(p), p <= settled_through
    std::uint64_t settled_through = 0;
    std::vector<Steps> certificate;        // f_s(p) = f(p) for all s >= certificate[p]
    std::vector<std::uint8_t> chosen;      // k_t for every block built
    unsigned blocks = 0;                   // S: blocks built to cover settled_through
    Steps stage_used = 0;                  // the s whose f_s was read off

    std::uint64_t operator()(std::uint64_t p) const {
        if (p > settled_through) {
            throw PreconditionError("f is settled only through position " + std::to_string(settled_through) +
                                    "; position " + std::to_string(p) + " requested");
        }
        return values[p];
    }
};

/// Per block t: the budget s from which blocks 0..t of f_s no longer move.
/// Blocks 0..t read programs 0..t at positions <= scan_horizon(t) with
/// budget s+1, and block t only exists once s >= t+1.
inline std::vector<Steps> block_certificates(const Registry& registry, unsigned blocks) {
    std::vector<Steps> out;
    out.reserve(blocks);
    Steps settle = 0;
    for (unsigned t = 0; t < blocks; ++t) {
        for (unsigned e = 0; e <= t; ++e) settle = std::max(settle, registry.settle_budget(e, scan_horizon(t)));
        out.push_back(std::max<Steps>(t + 1, settle == 0 ? 0 : settle - 1));
    }
    return out;
}

/// The limit f on [0, max_position], read off a single f_s with s large
/// enough that every position involved has settled.
inline LimitFunction limit_function(const Registry& registry, std::uint64_t max_position) {
    const unsigned blocks = stages_covering(max_position);
    detail::check_affordable(blocks);
    const auto block_cert = block_certificates(registry, blocks);

    LimitFunction f;
    f.blocks = blocks;
    f.settled_through = max_position;
    f.certificate.reserve(max_position + 1);
    f.certificate.push_back(0);
    for (std::uint64_t p = 1; p <= max_position; ++p) f.certificate.push_back(block_cert[*block_of(p)]);
    f.stage_used = std::max<Steps>(blocks, block_cert.empty() ? 0 : block_cert.back());

    StageFunction fs = build_stage_prefix(registry, f.stage_used, blocks);
    f.values.assign(fs.values.begin(), fs.values.begin() + static_cast<std::ptrdiff_t>(max_position + 1));
    f.chosen = std::move(fs.chosen);
    return f;
}

/// f_s on [0, max_position] for s = first..last (only positions in the
/// domain of f_s, so early stages may be shorter). Shows the limit being
/// approached.
inline std::vector<StageFunction> stage_history(const Registry& registry, std::uint64_t max_position, Steps first,
                                                Steps last) {
    const unsigned blocks = stages_covering(max_position);
    std::vector<StageFunction> out;
    for (Steps s = first; s <= last; ++s) {
        const unsigned b = static_cast<unsigned>(std::min<Steps>(s, blocks));
        StageFunction fs = build_stage_prefix(registry, s, b);
        if (fs.values.size() > max_position + 1) fs.values.resize(max_position + 1);
        out.push_back(std::move(fs));
    }
    return out;
}

/// Q with q_i = 2^{f(i+1) - f(i)} for i < n.
inline BasicSequence basic_sequence_from(const LimitFunction& f, std::size_t n) {
    if (n > f.settled_through) {
        throw PreconditionError("basic sequence of length " + std::to_string(n) + " needs f through position " +
                                std::to_string(n) + "; settled only through " + std::to_string(f.settled_through));
    }
    std::vector<std::uint64_t> exponents;
    exponents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) exponents.push_back(f.values[i + 1] - f.values[i]);
    return BasicSequence::from_exponents(std::move(exponents));
}

}  // namespace cantornorm
