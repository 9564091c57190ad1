// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "cantornorm/cantornorm.hpp"
#include "oracles.hpp"

using namespace cantornorm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::uint64_t kSeed = 0x5EEDC0DEULL;
constexpr unsigned kStages = 4;
constexpr unsigned kMaxStageChecked = 6;

std::vector<Registry> randomized_registries(std::mt19937_64& rng) {
    std::vector<Registry> out;
    for (int i = 0; i < 20; ++i) out.push_back(reference::random_registry(rng, kMaxStageChecked, 50));
    return out;
}

// Bound checks over s = 1..6 for one registry.
Outcome bound_check(const Registry& r) {
    std::vector<StageFunction> stages;
    for (unsigned s = 1; s <= kMaxStageChecked; ++s) {
        stages.push_back(build_stage_function(r, s));
        const auto report = verify_bound(stages.back());
        if (!report.ok) {
            const auto& v = *report.first_violation;
            return fail("s=" + std::to_string(s) + " t=" + std::to_string(v.t) + " " + v.form + " bound: f(" +
                        std::to_string(v.position) + ")=" + std::to_string(v.value) + " > " + std::to_string(v.bound));
        }
    }
    for (unsigned t = 0; t < kStages; ++t) {
        const std::uint64_t end = pow3_u64(t + 1) - 1;
        for (unsigned s = t + 1; s <= kMaxStageChecked; ++s) {
            const auto v = stages[s - 1].values[end];
            if (v > 2 * end) {
                return fail("f_" + std::to_string(s) + "(" + std::to_string(end) + ")=" + std::to_string(v) +
                            " exceeds " + std::to_string(2 * end));
            }
        }
    }
    return {};
}

// Witness for every e < 4 plus the orbit frequency deviation at 3^{e+1}.
Outcome witness_check_all(const Registry& r) {
    const auto f = limit_function(r, pow3_u64(kStages) - 1);
    const Rational half(1, 2), sixth(1, 6);
    for (std::size_t e = 0; e < kStages; ++e) {
        const auto w = witness_check(r, e, f);
        if (!w.pass || w.chosen_fraction() < witness_threshold()) {
            return fail("witness e=" + std::to_string(e) + " chosen fraction " + to_string(w.chosen_fraction()));
        }
        const auto ys = program_orbit(r, e, f, w.checkpoint);
        const auto freq = interval_frequency(ys, 0, half);
        if (abs(freq.fraction - half) < sixth) {
            return fail("e=" + std::to_string(e) + " [0,1/2) frequency " + to_string(freq.fraction) +
                        " within 1/6 of 1/2");
        }
    }
    return {};
}

Outcome over_registries(const std::vector<Registry>& regs, const std::function<Outcome(const Registry&)>& check) {
    for (std::size_t i = 0; i < regs.size(); ++i) {
        auto o = check(regs[i]);
        if (!o.pass) return fail("registry " + std::to_string(i) + ": " + o.detail);
    }
    return {true, std::to_string(regs.size()) + " registries"};
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    Registry r;
    for (int i = 0; i < 3; ++i) r.add(ConstantGen{0});
    const auto f = limit_function(r, 26);
    for (std::uint64_t p = 0; p < 27; ++p)
        if (f(p) != p) return fail("f(" + std::to_string(p) + ")=" + std::to_string(f(p)));
    const auto q = basic_sequence_from(f, 26);
    for (auto s : q.exponents())
        if (s != 1) return fail("exponent " + std::to_string(s));
    for (const auto& t : q.terms())
        if (t != 2) return fail("q term " + t.str());
    const double secs = seconds_since(t0);
    if (secs >= 1.0) return fail("took " + std::to_string(secs) + " s");
    return {true, "identity on [0,27), " + std::to_string(secs) + " s"};
}

Outcome criterion2(const std::vector<Registry>& regs) {
    const auto t0 = Clock::now();
    auto o = over_registries(regs, bound_check);
    const double secs = seconds_since(t0);
    if (o.pass && secs >= 10.0) return fail("took " + std::to_string(secs) + " s");
    if (o.pass) o.detail += ", " + std::to_string(secs) + " s";
    return o;
}

Outcome criterion3() {
    Registry r;
    TableHalt late;
    late.prefix = {0, 100};
    r.add(TableGen{{0, 1}, 0}, late);
    r.add(ConstantGen{0});

    const auto lim = limit_function(r, 8);
    const auto hist = stage_history(r, 8, 1, 120);
    bool any_change = false;
    for (std::uint64_t p = 0; p < 9; ++p) {
        int changes = 0;
        std::optional<std::uint64_t> prev;
        for (const auto& fs : hist) {
            if (p >= fs.values.size()) continue;
            if (prev && *prev != fs.values[p]) ++changes;
            prev = fs.values[p];
        }
        if (changes > 1) return fail("f_s(" + std::to_string(p) + ") changed " + std::to_string(changes) + " times");
        if (!prev || *prev != lim(p)) return fail("final f_s(" + std::to_string(p) + ") differs from the limit");
        any_change = any_change || changes == 1;
    }
    if (!any_change) return fail("late bit never moved f_s");
    return {true, "each f_s(p), p<9, changes at most once over s=1..120 and ends at f(p)"};
}

Outcome criterion4(const std::vector<Registry>& regs) { return over_registries(regs, witness_check_all); }

Outcome criterion5(std::mt19937_64& rng) {
    const Registry r = reference::random_registry(rng, 3, 20);
    const auto f = limit_function(r, 12);
    const auto q = basic_sequence_from(f, 12);
    std::uniform_int_distribution<int> bit(0, 1), len(0, 60);
    for (int trial = 0; trial < 50; ++trial) {
        Bits alpha(len(rng));
        for (auto& b : alpha) b = static_cast<std::uint8_t>(bit(rng));
        if (alpha.size() < f(12)) alpha.resize(f(12), 0);
        const auto ys = orbit(value_of_bits(alpha).value(), q, 12);
        for (std::size_t n = 0; n < 12; ++n) {
            const auto p = q.exponent_sum(n);
            if (p != f(n + 1)) return fail("s_0+...+s_n != f(n+1) at n=" + std::to_string(n));
            if (ys[n + 1] != value_of_bits(shift(alpha, p)).value()) {
                return fail("trial " + std::to_string(trial) + " n=" + std::to_string(n));
            }
        }
    }
    return {true, "50 words, n <= 11, Q exponents " + std::to_string(q.exponent_sum(11)) + " total"};
}

Outcome criterion6() {
    const std::vector<unsigned> listed{0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1};
    if (champernowne_bits(2, 18) != listed) return fail("prefix mismatch");
    return {true, "0 1 10 11 100 101 110 111"};
}

Outcome criterion7(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> den(1, 1000), term(2, 16);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = den(rng);
        const Rational x(std::uniform_int_distribution<int>(0, d - 1)(rng), d);
        std::vector<Integer> terms;
        for (int i = 0; i < 10; ++i) terms.emplace_back(term(rng));
        const auto q = BasicSequence::from_terms(terms);
        const auto digits = cantor_digits(x, q, 10);
        Integer product = 1;
        for (std::size_t i = 0; i < 10; ++i) {
            if (digits.digits[i] < 0 || digits.digits[i] >= q[i]) return fail("digit out of range");
            product *= q[i];
        }
        const Rational gap = x - cantor_value(digits);
        if (gap < 0 || gap >= Rational(Integer(1), product)) {
            return fail("x=" + to_string(x) + " gap " + to_string(gap));
        }
    }
    return {true, "100 rationals"};
}

Outcome criterion8(std::mt19937_64& rng) {
    for (int c = 0; c < 200; ++c) {
        const int size = 1 + c % 8;
        const int den = 1 + static_cast<int>(rng() % 32);
        std::vector<Rational> pts;
        for (int i = 0; i < size; ++i) pts.emplace_back(static_cast<int>(rng() % den), den);
        std::sort(pts.begin(), pts.end());
        const auto fast = star_discrepancy(pts);
        const auto brute = reference::brute_star_discrepancy(pts);
        if (fast != brute) return fail("case " + std::to_string(c) + ": " + to_string(fast) + " vs " + to_string(brute));
    }
    return {true, "200 cases"};
}

Outcome criterion9(std::mt19937_64& rng) {
    const auto path = std::filesystem::temp_directory_path() / "cantornorm_acceptance_oracle.txt";
    {
        std::ofstream out(path);
        out << "# acceptance oracle\n";
        for (int i = 0; i < 200; ++i) out << (rng() & 1) << (i % 40 == 39 ? "\n" : "");
        out << "default 1\n";
    }
    const Oracle oracle = load_oracle(path.string());
    std::filesystem::remove(path);

    std::uniform_int_distribution<Steps> halt(0, 50);
    std::uniform_int_distribution<std::uint64_t> offset(0, 30);
    std::vector<Registry> regs;
    for (int i = 0; i < 20; ++i) {
        const Registry base = reference::random_registry(rng, kMaxStageChecked - 2, 50);
        Registry r(oracle);
        r.add(OracleBitGen{offset(rng), false}, LinearHalt{1, halt(rng)});
        r.add(base.entry(0).generator, base.entry(0).halt);
        r.add(OracleBitGen{offset(rng), true}, ConstantHalt{halt(rng)});
        for (std::size_t e = 1; e < base.size(); ++e) r.add(base.entry(e).generator, base.entry(e).halt);
        r.check_oracle();
        regs.push_back(std::move(r));
    }
    auto bounds = over_registries(regs, bound_check);
    if (!bounds.pass) return fail("criterion 2 under oracle: " + bounds.detail);
    auto witnesses = over_registries(regs, witness_check_all);
    if (!witnesses.pass) return fail("criterion 4 under oracle: " + witnesses.detail);
    return {true, "criteria 2 and 4 on 20 registries with oracle programs at indices 0 and 2"};
}

}  // namespace

int main() {
    std::mt19937_64 rng(kSeed);
    const auto regs = randomized_registries(rng);

    struct Row {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Row> rows = {
        {"C1 forced identity (all-zero registry, S=3)", criterion1},
        {"C2 stage bound on 20 random registries, s=1..6", [&] { return criterion2(regs); }},
        {"C3 settling with one late bit", criterion3},
        {"C4 witness >= 2/3 and deviation >= 1/6", [&] { return criterion4(regs); }},
        {"C5 shift/orbit identity", [&] { return criterion5(rng); }},
        {"C6 Champernowne base-2 prefix", criterion6},
        {"C7 Cantor round trip", [&] { return criterion7(rng); }},
        {"C8 star discrepancy vs brute force", [&] { return criterion8(rng); }},
        {"C9 relativized run", [&] { return criterion9(rng); }},
    };

    int failures = 0;
    for (const auto& row : rows) {
        Outcome o;
        try {
            o = row.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << row.name << " :: " << o.detail << "\n";
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
