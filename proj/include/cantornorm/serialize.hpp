#pragma once

// Machine-readable records for the command line front end. Every document
// carries a top-level "format" tag; rationals are "num/den" strings and a
// "_decimal" sibling is added only where a human is likely to read it.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantornorm/cantor.hpp"
#include "cantornorm/construction.hpp"
#include "cantornorm/normality.hpp"
#include "cantornorm/rational.hpp"

namespace cantornorm {

inline constexpr const char* kBuildFormat = "cantornorm.build/1";
inline constexpr const char* kVerifyFormat = "cantornorm.verify/1";
inline constexpr const char* kExpandFormat = "cantornorm.expand/1";
inline constexpr const char* kOrbitFormat = "cantornorm.orbit/1";
inline constexpr const char* kDiscrepancyFormat = "cantornorm.discrepancy/1";
inline constexpr const char* kChampernowneFormat = "cantornorm.champernowne/1";

using nlohmann::json;

inline json rational_json(const Rational& x) { return to_string(x); }

inline json integers_json(const std::vector<Integer>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

// ---------------------------------------------------------------------------
// build

inline json build_json(const LimitFunction& f, const BasicSequence& q,
                       const std::vector<StageFunction>* history = nullptr) {
    json rows = json::array();
    for (std::uint64_t p = 0; p <= f.settled_through; ++p) {
        const auto t = block_of(p);
        rows.push_back({{"position", p},
                        {"value", f.values[p]},
                        {"block", t ? json(*t) : json(nullptr)},
                        {"chosen_bit", t ? json(f.chosen[*t]) : json(nullptr)},
                        {"certificate", f.certificate[p]}});
    }
    json doc = {{"format", kBuildFormat},
                {"blocks", f.blocks},
                {"max_position", f.settled_through},
                {"stage_used", f.stage_used},
                {"chosen_bits", f.chosen},
                {"f", std::move(rows)},
                {"q_exponents", q.exponents()}};
    if (history) {
        json h = json::array();
        for (const auto& fs : *history) h.push_back({{"s", fs.stage}, {"values", fs.values}});
        doc["history"] = std::move(h);
    }
    return doc;
}

inline std::string build_csv(const LimitFunction& f, const BasicSequence& q) {
    std::ostringstream out;
    out << "# " << kBuildFormat << "\n";
    out << "record,index,value,block,chosen_bit,certificate\n";
    for (std::uint64_t p = 0; p <= f.settled_through; ++p) {
        out << "f," << p << ',' << f.values[p] << ',';
        if (const auto t = block_of(p)) out << *t << ',' << unsigned(f.chosen[*t]);
        else out << ',';
        out << ',' << f.certificate[p] << '\n';
    }
    const auto& ex = q.exponents();
    for (std::size_t n = 0; n < ex.size(); ++n) out << "q," << n << ',' << ex[n] << ",,,\n";
    return out.str();
}

/// Reads back a JSON build artifact as a limit function.
inline LimitFunction limit_function_from_json(const json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kBuildFormat) {
        throw ConfigError(std::string("build artifact must have format \"") + kBuildFormat + "\"");
    }
    try {
        LimitFunction f;
        f.blocks = doc.at("blocks").get<unsigned>();
        f.settled_through = doc.at("max_position").get<std::uint64_t>();
        f.stage_used = doc.at("stage_used").get<Steps>();
        f.chosen = doc.at("chosen_bits").get<std::vector<std::uint8_t>>();
        for (const auto& row : doc.at("f")) {
            f.values.push_back(row.at("value").get<std::uint64_t>());
            f.certificate.push_back(row.at("certificate").get<Steps>());
        }
        if (f.values.size() != f.settled_through + 1 || f.chosen.size() != f.blocks) {
            throw ConfigError("build artifact is inconsistent: row count or block count mismatch");
        }
        return f;
    } catch (const json::exception& err) {
        throw ConfigError(std::string("malformed build artifact: ") + err.what());
    }
}

// ---------------------------------------------------------------------------
// verify

inline json witness_json(const WitnessReport& w) {
    return {{"program", w.program_index},
            {"checkpoint", w.checkpoint},
            {"chosen_bit", w.chosen_bit},
            {"low_count", w.low_count},
            {"high_count", w.high_count},
            {"fraction_low", rational_json(w.fraction_low)},
            {"fraction_high", rational_json(w.fraction_high)},
            {"chosen_fraction_decimal", to_double(w.chosen_fraction())},
            {"pass", w.pass}};
}

inline json non_normality_json(const NonNormalityReport& r) {
    json cps = json::array();
    for (const auto& c : r.checkpoints) {
        cps.push_back({{"index", c.witness.program_index},
                       {"checkpoint", c.witness.checkpoint},
                       {"witness_pass", c.witness.pass},
                       {"frequency_low_half", rational_json(c.low_half.fraction)},
                       {"deviation", rational_json(c.deviation)},
                       {"deviation_decimal", to_double(c.deviation)},
                       {"deviates", c.deviates}});
    }
    return {{"source", r.source},
            {"checkpoints", std::move(cps)},
            {"non_normal", r.non_normal ? json(*r.non_normal) : json(nullptr)}};
}

// ---------------------------------------------------------------------------
// expand / orbit / discrepancy / champernowne

inline json digits_json(const Rational& x, const CantorDigits& d) {
    return {{"format", kExpandFormat},
            {"x", rational_json(x)},
            {"q", integers_json(d.base.terms())},
            {"digits", integers_json(d.digits)},
            {"value", rational_json(cantor_value(d))}};
}

inline std::string digits_csv(const CantorDigits& d) {
    std::ostringstream out;
    out << "# " << kExpandFormat << "\nn,q,digit\n";
    for (std::size_t i = 0; i < d.digits.size(); ++i) out << i << ',' << d.base[i] << ',' << d.digits[i] << '\n';
    return out.str();
}

inline json orbit_json(const std::vector<Rational>& ys, const BasicSequence& q) {
    json pts = json::array();
    for (const auto& y : ys) pts.push_back(rational_json(y));
    return {{"format", kOrbitFormat}, {"q", integers_json(q.terms())}, {"points", std::move(pts)}};
}

inline std::string orbit_csv(const std::vector<Rational>& ys) {
    std::ostringstream out;
    out << "# " << kOrbitFormat << "\nn,point,decimal\n";
    for (std::size_t i = 0; i < ys.size(); ++i) out << i << ',' << to_string(ys[i]) << ',' << to_double(ys[i]) << '\n';
    return out.str();
}

/// Frequencies of the dyadic intervals [j/2^k, (j+1)/2^k) for k = 0..max_level.
inline std::vector<FrequencyReport> dyadic_frequencies(std::span<const Rational> points, unsigned max_level) {
    std::vector<FrequencyReport> out;
    for (unsigned k = 0; k <= max_level; ++k) {
        const std::uint64_t cells = std::uint64_t{1} << k;
        for (std::uint64_t j = 0; j < cells; ++j) {
            out.push_back(interval_frequency(points, Rational(j, cells), Rational(j + 1, cells)));
        }
    }
    return out;
}

inline json discrepancy_json(const std::vector<Rational>& points, unsigned max_level) {
    const Rational d = star_discrepancy(points);
    json freqs = json::array();
    for (const auto& r : dyadic_frequencies(points, max_level)) {
        freqs.push_back({{"lo", rational_json(r.lo)},
                         {"hi", rational_json(r.hi)},
                         {"hits", r.hits},
                         {"fraction", rational_json(r.fraction)}});
    }
    return {{"format", kDiscrepancyFormat},
            {"n", points.size()},
            {"star_discrepancy", rational_json(d)},
            {"star_discrepancy_decimal", to_double(d)},
            {"intervals", std::move(freqs)}};
}

inline std::string discrepancy_csv(const std::vector<Rational>& points, unsigned max_level) {
    std::ostringstream out;
    out << "# " << kDiscrepancyFormat << "\nrecord,lo,hi,hits,value\n";
    for (const auto& r : dyadic_frequencies(points, max_level)) {
        out << "interval," << to_string(r.lo) << ',' << to_string(r.hi) << ',' << r.hits << ','
            << to_string(r.fraction) << '\n';
    }
    out << "star_discrepancy,,,," << to_string(star_discrepancy(points)) << '\n';
    return out.str();
}

}  // namespace cantornorm
