#pragma once

// Registry config (JSON) and oracle bit-prefix files. The grammar of both is
// documented in README.md; parsing is strict and every problem surfaces as a
// ConfigError naming the offending entry.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cantornorm/errors.hpp"
#include "cantornorm/generators.hpp"
#include "cantornorm/oracle.hpp"
#include "cantornorm/programs.hpp"

namespace cantornorm {

inline constexpr const char* kRegistryFormat = "cantornorm.registry/1";

namespace detail {

using nlohmann::json;

inline void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

inline std::uint64_t get_natural(const json& obj, const char* key, const std::string& where,
                                 std::optional<std::uint64_t> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(where + ": missing '" + key + "'");
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(where + ": '" + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline std::uint8_t get_bit(const json& obj, const char* key, const std::string& where,
                            std::optional<std::uint8_t> fallback = std::nullopt) {
    const auto v = get_natural(obj, key, where, fallback);
    if (v > 1) throw ConfigError(where + ": '" + key + "' must be 0 or 1");
    return static_cast<std::uint8_t>(v);
}

inline Bits get_bit_string(const json& obj, const char* key, const std::string& where, bool allow_empty) {
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw ConfigError(where + ": '" + key + "' must be a string of 0/1 characters");
    }
    Bits out;
    for (char c : obj.at(key).get<std::string>()) {
        if (c != '0' && c != '1') throw ConfigError(where + ": '" + key + "' may contain only 0 and 1");
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (out.empty() && !allow_empty) throw ConfigError(where + ": '" + key + "' must be nonempty");
    return out;
}

inline HaltRule parse_halt(const json& h, const std::string& where) {
    const std::string at = where + ".halt";
    if (!h.is_object() || !h.contains("rule") || !h.at("rule").is_string()) {
        throw ConfigError(at + ": expected an object with a string 'rule'");
    }
    const auto rule = h.at("rule").get<std::string>();
    if (rule == "constant") {
        require_keys(h, {"rule", "steps"}, at);
        return ConstantHalt{get_natural(h, "steps", at)};
    }
    if (rule == "linear") {
        require_keys(h, {"rule", "slope", "offset"}, at);
        return LinearHalt{get_natural(h, "slope", at), get_natural(h, "offset", at, 0)};
    }
    if (rule == "table") {
        require_keys(h, {"rule", "steps", "default"}, at);
        if (!h.contains("steps") || !h.at("steps").is_array()) throw ConfigError(at + ": 'steps' must be an array");
        TableHalt t;
        for (const auto& v : h.at("steps")) {
            if (!v.is_number_unsigned()) throw ConfigError(at + ": table steps must be nonnegative integers");
            t.prefix.push_back(v.get<Steps>());
        }
        t.fill = get_natural(h, "default", at, 0);
        return t;
    }
    throw ConfigError(at + ": unknown rule '" + rule + "'");
}

inline GeneratorSpec parse_generator(const json& p, const std::string& where, const std::string& kind) {
    if (kind == "constant") {
        require_keys(p, {"kind", "bit", "halt"}, where);
        return ConstantGen{get_bit(p, "bit", where)};
    }
    if (kind == "periodic") {
        require_keys(p, {"kind", "pattern", "halt"}, where);
        return PeriodicGen{get_bit_string(p, "pattern", where, false)};
    }
    if (kind == "table") {
        require_keys(p, {"kind", "bits", "default", "halt"}, where);
        return TableGen{get_bit_string(p, "bits", where, true), get_bit(p, "default", where, 0)};
    }
    if (kind == "rational") {
        require_keys(p, {"kind", "num", "den", "halt"}, where);
        RationalGen g{get_natural(p, "num", where), get_natural(p, "den", where)};
        if (g.den == 0 || g.num >= g.den) throw ConfigError(where + ": rational needs 0 <= num < den");
        return g;
    }
    if (kind == "champernowne") {
        require_keys(p, {"kind", "halt"}, where);
        return ChampernowneGen{};
    }
    if (kind == "oracle") {
        require_keys(p, {"kind", "offset", "invert", "halt"}, where);
        bool invert = false;
        if (p.contains("invert")) {
            if (!p.at("invert").is_boolean()) throw ConfigError(where + ": 'invert' must be a boolean");
            invert = p.at("invert").get<bool>();
        }
        return OracleBitGen{get_natural(p, "offset", where, 0), invert};
    }
    throw ConfigError(where + ": unknown kind '" + kind + "'");
}

inline std::string bit_string(const Bits& bits) {
    std::string s;
    for (auto b : bits) s.push_back(static_cast<char>('0' + b));
    return s;
}

}  // namespace detail

/// Oracle from its JSON object form {"prefix": "0110", "default": 0}.
inline Oracle oracle_from_json(const nlohmann::json& o) {
    const std::string where = "oracle";
    if (!o.is_object()) throw ConfigError("oracle: expected an object");
    detail::require_keys(o, {"prefix", "default"}, where);
    return Oracle(detail::get_bit_string(o, "prefix", where, true), detail::get_bit(o, "default", where, 0));
}

inline Registry registry_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("registry: top level must be an object");
    detail::require_keys(doc, {"format", "oracle", "programs"}, "registry");
    if (!doc.contains("format") || doc.at("format") != kRegistryFormat) {
        throw ConfigError(std::string("registry: 'format' must be \"") + kRegistryFormat + "\"");
    }
    if (!doc.contains("programs") || !doc.at("programs").is_array()) {
        throw ConfigError("registry: 'programs' must be an array");
    }
    Registry registry;
    if (doc.contains("oracle")) registry.set_oracle(oracle_from_json(doc.at("oracle")));

    std::size_t e = 0;
    for (const auto& p : doc.at("programs")) {
        const std::string where = "programs[" + std::to_string(e) + "]";
        if (!p.is_object()) throw ConfigError(where + ": expected an object");
        if (p.contains("alias_of")) {
            detail::require_keys(p, {"alias_of"}, where);
            const auto target = detail::get_natural(p, "alias_of", where);
            if (target >= e) throw ConfigError(where + ": alias_of must name an earlier program");
            registry.add_alias(static_cast<std::size_t>(target));
        } else {
            if (!p.contains("kind") || !p.at("kind").is_string()) throw ConfigError(where + ": missing string 'kind'");
            GeneratorSpec g = detail::parse_generator(p, where, p.at("kind").get<std::string>());
            HaltRule h = p.contains("halt") ? detail::parse_halt(p.at("halt"), where) : HaltRule{ConstantHalt{}};
            registry.add(std::move(g), std::move(h));
        }
        ++e;
    }
    return registry;
}

inline nlohmann::json to_json(const Oracle& o) {
    return {{"prefix", detail::bit_string(o.prefix())}, {"default", o.default_bit()}};
}

inline nlohmann::json to_json(const HaltRule& rule) {
    return std::visit(
        [](const auto& h) -> nlohmann::json {
            using H = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<H, ConstantHalt>) {
                return {{"rule", "constant"}, {"steps", h.steps}};
            } else if constexpr (std::is_same_v<H, LinearHalt>) {
                return {{"rule", "linear"}, {"slope", h.slope}, {"offset", h.offset}};
            } else {
                return {{"rule", "table"}, {"steps", h.prefix}, {"default", h.fill}};
            }
        },
        rule);
}

inline nlohmann::json to_json(const Registry& registry) {
    nlohmann::json programs = nlohmann::json::array();
    for (const auto& pe : registry.entries()) {
        if (pe.alias_of) {
            programs.push_back({{"alias_of", *pe.alias_of}});
            continue;
        }
        nlohmann::json p = std::visit(
            [](const auto& g) -> nlohmann::json {
                using G = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<G, ConstantGen>) {
                    return {{"kind", "constant"}, {"bit", g.bit}};
                } else if constexpr (std::is_same_v<G, PeriodicGen>) {
                    return {{"kind", "periodic"}, {"pattern", detail::bit_string(g.pattern)}};
                } else if constexpr (std::is_same_v<G, TableGen>) {
                    return {{"kind", "table"}, {"bits", detail::bit_string(g.prefix)}, {"default", g.fill}};
                } else if constexpr (std::is_same_v<G, RationalGen>) {
                    return {{"kind", "rational"}, {"num", g.num}, {"den", g.den}};
                } else if constexpr (std::is_same_v<G, ChampernowneGen>) {
                    return {{"kind", "champernowne"}};
                } else {
                    return {{"kind", "oracle"}, {"offset", g.offset}, {"invert", g.invert}};
                }
            },
            pe.generator);
        p["halt"] = to_json(pe.halt);
        programs.push_back(std::move(p));
    }
    nlohmann::json doc = {{"format", kRegistryFormat}, {"programs", std::move(programs)}};
    if (registry.oracle()) doc["oracle"] = to_json(*registry.oracle());
    return doc;
}

inline Registry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open registry file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError("registry file '" + path + "' is not valid JSON: " + err.what());
    }
    return registry_from_json(doc);
}

/// Oracle bit-prefix text: '#' starts a comment; a line "default 0" or
/// "default 1" sets the bit beyond the prefix; every other character must be
/// 0, 1 or whitespace and contributes to the prefix in reading order.
inline Oracle parse_oracle_text(const std::string& text) {
    Bits prefix;
    std::uint8_t fill = 0;
    bool seen_default = false;
    std::istringstream lines(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(lines, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string first;
        if (!(words >> first)) continue;
        if (first == "default") {
            std::string bit, extra;
            if (!(words >> bit) || (bit != "0" && bit != "1") || (words >> extra)) {
                throw ConfigError("oracle line " + std::to_string(lineno) + ": expected 'default 0' or 'default 1'");
            }
            if (seen_default) throw ConfigError("oracle line " + std::to_string(lineno) + ": duplicate default");
            seen_default = true;
            fill = static_cast<std::uint8_t>(bit[0] - '0');
            continue;
        }
        for (char c : line) {
            if (c == '0' || c == '1') {
                prefix.push_back(static_cast<std::uint8_t>(c - '0'));
            } else if (c != ' ' && c != '\t' && c != '\r') {
                throw ConfigError("oracle line " + std::to_string(lineno) + ": unexpected character '" +
                                  std::string(1, c) + "'");
            }
        }
    }
    return Oracle(std::move(prefix), fill);
}

inline Oracle load_oracle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open oracle file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_oracle_text(buf.str());
}

}  // namespace cantornorm
