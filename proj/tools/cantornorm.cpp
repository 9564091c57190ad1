// cantornorm: command line front end.
//
//   build         run the construction, emit the f table and the Q exponents
//   verify        witness check for every program index, deviation report per aliased real
//   expand        Cantor series digits of a rational
//   orbit         x, q_0 x, q_0 q_1 x, ... mod 1
//   discrepancy   dyadic interval frequencies and star discrepancy of an orbit
//   champernowne  digits of the base-b Champernowne sequence
//
// Exit codes: 0 success, 1 configuration/usage error, 2 resource limit,
// 3 a witness check failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cantornorm/cantornorm.hpp"

namespace cn = cantornorm;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitResource = 2;
constexpr int kExitWitness = 3;

struct Options {
    std::string registry;
    std::string oracle;
    std::string out;
    std::string format = "json";
    unsigned stages = 0;
    std::optional<std::uint64_t> max_pos;
    std::uint64_t history = 0;
    std::string artifact;
    std::string x;
    std::string q;
    std::optional<std::size_t> source;
    std::size_t count = 10;
    unsigned levels = 4;
    unsigned base = 2;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw cn::ConfigError("cannot write '" + opt.out + "'");
    file << text;
}

void emit(const Options& opt, const nlohmann::json& doc) { emit(opt, doc.dump(2) + "\n"); }

cn::Registry load_registry(const Options& opt) {
    if (opt.registry.empty()) throw cn::ConfigError("--registry is required");
    cn::Registry registry = cn::load_registry(opt.registry);
    if (!opt.oracle.empty()) registry.set_oracle(cn::load_oracle(opt.oracle));
    registry.check_oracle();
    return registry;
}

void require_stages(const Options& opt) {
    if (opt.stages < 1) throw cn::ConfigError("--stages must be at least 1");
    if (opt.stages > cn::kMaxAffordableStages) {
        throw cn::ResourceLimit("--stages " + std::to_string(opt.stages) + " exceeds the affordable maximum " +
                                    std::to_string(cn::kMaxAffordableStages),
                                opt.stages);
    }
}

// Limit function through `max_pos`, which must fit inside --stages blocks.
cn::LimitFunction limit_within_stages(const cn::Registry& registry, const Options& opt, std::uint64_t max_pos) {
    require_stages(opt);
    const unsigned needed = cn::stages_covering(max_pos);
    if (needed > opt.stages) {
        throw cn::ResourceLimit("position " + std::to_string(max_pos) + " needs --stages " + std::to_string(needed) +
                                    " (got " + std::to_string(opt.stages) + ")",
                                needed);
    }
    return cn::limit_function(registry, max_pos);
}

cn::BasicSequence parse_q_list(const std::string& text) {
    std::vector<cn::Integer> terms;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const cn::Rational v = cn::parse_rational(item);
        if (boost::multiprecision::denominator(v) != 1) throw cn::ConfigError("--q terms must be integers");
        terms.push_back(boost::multiprecision::numerator(v));
    }
    return cn::BasicSequence::from_terms(std::move(terms));
}

// Q from --q, or from the construction when a registry is given.
cn::BasicSequence basic_sequence(const Options& opt, std::size_t n) {
    if (!opt.q.empty()) {
        auto q = parse_q_list(opt.q);
        if (q.size() < n) throw cn::ConfigError("--q lists fewer than " + std::to_string(n) + " terms");
        return q;
    }
    if (opt.registry.empty()) throw cn::ConfigError("give --q or --registry/--stages for the basic sequence");
    const auto registry = load_registry(opt);
    return cn::basic_sequence_from(limit_within_stages(registry, opt, n), n);
}

// Orbit points y_0..y_{n-1} of --x or of program --source.
std::vector<cn::Rational> orbit_points(const Options& opt, std::size_t n) {
    if (n == 0) throw cn::ConfigError("-n must be positive");
    if (opt.source) {
        if (!opt.x.empty()) throw cn::ConfigError("--x and --source are exclusive");
        if (!opt.q.empty()) throw cn::ConfigError("--source uses the constructed Q; drop --q");
        const auto registry = load_registry(opt);
        const auto f = limit_within_stages(registry, opt, n - 1);
        return cn::program_orbit(registry, *opt.source, f, n);
    }
    if (opt.x.empty()) throw cn::ConfigError("give --x or --source");
    const cn::Rational x = cn::parse_rational(opt.x);
    const auto q = basic_sequence(opt, n - 1);
    return cn::orbit(x, q, n - 1);
}

void check_format(const Options& opt) {
    if (opt.format != "json" && opt.format != "csv") throw cn::ConfigError("--format must be json or csv");
}

int cmd_build(const Options& opt) {
    check_format(opt);
    const auto registry = load_registry(opt);
    require_stages(opt);
    const std::uint64_t max_pos = opt.max_pos.value_or(cn::pow3_u64(opt.stages) - 1);
    const auto f = limit_within_stages(registry, opt, max_pos);
    const auto q = cn::basic_sequence_from(f, max_pos);

    const auto report = cn::verify_bound(cn::build_stage_prefix(registry, f.stage_used, f.blocks));
    if (!report.ok) {
        const auto& v = *report.first_violation;
        std::cerr << "bound violated at t=" << v.t << " (" << v.form << "): f(" << v.position << ")=" << v.value
                  << " > " << v.bound << "\n";
        return kExitWitness;
    }

    if (opt.format == "csv") {
        emit(opt, cn::build_csv(f, q));
        return 0;
    }
    std::vector<cn::StageFunction> history;
    if (opt.history > 0) history = cn::stage_history(registry, max_pos, 1, opt.history);
    emit(opt, cn::build_json(f, q, opt.history > 0 ? &history : nullptr));
    return 0;
}

int cmd_verify(const Options& opt) {
    check_format(opt);
    const auto registry = load_registry(opt);
    require_stages(opt);
    const std::uint64_t max_pos = cn::pow3_u64(opt.stages) - 1;

    cn::LimitFunction f;
    if (!opt.artifact.empty()) {
        std::ifstream in(opt.artifact);
        if (!in) throw cn::ConfigError("cannot open build artifact '" + opt.artifact + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& err) {
            throw cn::ConfigError("build artifact is not valid JSON: " + std::string(err.what()));
        }
        f = cn::limit_function_from_json(doc);
        if (f.settled_through < max_pos) {
            throw cn::ResourceLimit("build artifact covers positions through " + std::to_string(f.settled_through) +
                                        "; --stages " + std::to_string(opt.stages) + " needs " +
                                        std::to_string(max_pos),
                                    opt.stages);
        }
    } else {
        f = limit_within_stages(registry, opt, max_pos);
    }
    if (registry.size() < opt.stages) {
        throw cn::ConfigError("registry has " + std::to_string(registry.size()) + " programs; --stages needs " +
                              std::to_string(opt.stages));
    }

    bool all_pass = true;
    std::vector<cn::WitnessReport> witnesses;
    for (std::size_t e = 0; e < opt.stages; ++e) {
        witnesses.push_back(cn::witness_check(registry, e, f));
        all_pass = all_pass && witnesses.back().pass;
    }

    // One report per real that is registered under more than one index.
    std::vector<cn::NonNormalityReport> reals;
    for (std::size_t e = 0; e < registry.size(); ++e) {
        if (registry.root_of(e) != e) continue;
        const auto all = registry.aliases_of(e);
        if (all.size() < 2) continue;
        std::vector<std::size_t> checkpoints;
        for (auto i : all)
            if (i < opt.stages) checkpoints.push_back(i);
        reals.push_back(cn::non_normality_report(registry, e, f, checkpoints));
        if (reals.back().non_normal) all_pass = all_pass && *reals.back().non_normal;
    }

    if (opt.format == "csv") {
        std::ostringstream out;
        out << "# " << cn::kVerifyFormat << "\nrecord,program,checkpoint,chosen_bit,fraction_low,fraction_high,pass\n";
        for (const auto& w : witnesses) {
            out << "witness," << w.program_index << ',' << w.checkpoint << ',' << unsigned(w.chosen_bit) << ','
                << cn::to_string(w.fraction_low) << ',' << cn::to_string(w.fraction_high) << ','
                << (w.pass ? "true" : "false") << '\n';
        }
        for (const auto& r : reals) {
            for (const auto& c : r.checkpoints) {
                out << "deviation," << c.witness.program_index << ',' << c.witness.checkpoint << ",,"
                    << cn::to_string(c.low_half.fraction) << ',' << cn::to_string(c.deviation) << ','
                    << (c.deviates ? "true" : "false") << '\n';
            }
        }
        emit(opt, out.str());
    } else {
        nlohmann::json doc = {{"format", cn::kVerifyFormat}, {"stages", opt.stages}};
        doc["witnesses"] = nlohmann::json::array();
        for (const auto& w : witnesses) doc["witnesses"].push_back(cn::witness_json(w));
        doc["reals"] = nlohmann::json::array();
        for (const auto& r : reals) doc["reals"].push_back(cn::non_normality_json(r));
        doc["all_pass"] = all_pass;
        emit(opt, doc);
    }
    if (!all_pass) {
        std::cerr << "verify: witness check failed\n";
        return kExitWitness;
    }
    return 0;
}

int cmd_expand(const Options& opt) {
    check_format(opt);
    if (opt.x.empty()) throw cn::ConfigError("--x is required");
    const cn::Rational x = cn::parse_rational(opt.x);
    const auto digits = cn::cantor_digits(x, basic_sequence(opt, opt.count), opt.count);
    if (opt.format == "csv") emit(opt, cn::digits_csv(digits));
    else emit(opt, cn::digits_json(x, digits));
    return 0;
}

int cmd_orbit(const Options& opt) {
    check_format(opt);
    const auto ys = orbit_points(opt, opt.count);
    if (opt.format == "csv") {
        emit(opt, cn::orbit_csv(ys));
        return 0;
    }
    // Q actually used: n - 1 multipliers.
    cn::BasicSequence q;
    if (opt.source) {
        const auto registry = load_registry(opt);
        q = cn::basic_sequence_from(cn::limit_function(registry, opt.count - 1), opt.count - 1);
    } else {
        q = basic_sequence(opt, opt.count - 1).prefix(opt.count - 1);
    }
    emit(opt, cn::orbit_json(ys, q));
    return 0;
}

int cmd_discrepancy(const Options& opt) {
    check_format(opt);
    if (opt.levels > 4) throw cn::ConfigError("--levels is at most 4");
    const auto ys = orbit_points(opt, opt.count);
    if (opt.format == "csv") emit(opt, cn::discrepancy_csv(ys, opt.levels));
    else emit(opt, cn::discrepancy_json(ys, opt.levels));
    return 0;
}

int cmd_champernowne(const Options& opt) {
    check_format(opt);
    const auto digits = cn::champernowne_bits(opt.base, opt.count);
    if (opt.format == "csv") {
        std::ostringstream out;
        out << "# " << cn::kChampernowneFormat << "\nn,digit\n";
        for (std::size_t i = 0; i < digits.size(); ++i) out << i << ',' << digits[i] << '\n';
        emit(opt, out.str());
    } else {
        emit(opt, nlohmann::json{{"format", cn::kChampernowneFormat}, {"base", opt.base}, {"digits", digits}});
    }
    return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "Output format: json or csv");
    cmd->add_option("--out", opt.out, "Write output to this file instead of stdout");
}

void add_registry(CLI::App* cmd, Options& opt) {
    cmd->add_option("--registry", opt.registry, "Registry config (JSON)");
    cmd->add_option("--oracle", opt.oracle, "Oracle bit-prefix file; overrides any oracle in the registry");
    cmd->add_option("--stages", opt.stages, "Stage budget S (blocks of the construction)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Staged diagonal construction of a basic sequence, with Cantor series and equidistribution tools"};
    app.require_subcommand(1);
    Options opt;

    auto* build = app.add_subcommand("build", "Run the construction and emit f and Q");
    add_registry(build, opt);
    add_common(build, opt);
    build->add_option("--max-pos", opt.max_pos, "Last position of f to emit (default 3^S - 1)");
    build->add_option("--history", opt.history, "Also emit f_s for s = 1..N on the same positions (JSON only)");

    auto* verify = app.add_subcommand("verify", "Check the non-normality witnesses");
    add_registry(verify, opt);
    add_common(verify, opt);
    verify->add_option("--artifact", opt.artifact, "Verify this build artifact instead of rebuilding");

    auto* expand = app.add_subcommand("expand", "Cantor series digits of a rational");
    add_registry(expand, opt);
    add_common(expand, opt);
    expand->add_option("--x", opt.x, "Rational in [0,1), e.g. 5/6")->required();
    expand->add_option("--q", opt.q, "Basic sequence as comma-separated integers (else the constructed Q)");
    expand->add_option("-n,--count", opt.count, "Number of digits");

    auto* orbit = app.add_subcommand("orbit", "Orbit of a point under a basic sequence");
    add_registry(orbit, opt);
    add_common(orbit, opt);
    orbit->add_option("--x", opt.x, "Rational starting point in [0,1)");
    orbit->add_option("--source", opt.source, "Program index whose real starts the orbit (constructed Q)");
    orbit->add_option("--q", opt.q, "Basic sequence as comma-separated integers");
    orbit->add_option("-n,--count", opt.count, "Number of orbit points");

    auto* disc = app.add_subcommand("discrepancy", "Interval frequencies and star discrepancy of an orbit");
    add_registry(disc, opt);
    add_common(disc, opt);
    disc->add_option("--x", opt.x, "Rational starting point in [0,1)");
    disc->add_option("--source", opt.source, "Program index whose real starts the orbit (constructed Q)");
    disc->add_option("--q", opt.q, "Basic sequence as comma-separated integers");
    disc->add_option("-n,--count", opt.count, "Number of orbit points");
    disc->add_option("--levels", opt.levels, "Dyadic interval levels 0..K (K <= 4)");

    auto* champ = app.add_subcommand("champernowne", "Digits of the Champernowne sequence");
    add_common(champ, opt);
    champ->add_option("--base", opt.base, "Base b >= 2");
    champ->add_option("-n,--count", opt.count, "Number of digits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*build) return cmd_build(opt);
        if (*verify) return cmd_verify(opt);
        if (*expand) return cmd_expand(opt);
        if (*orbit) return cmd_orbit(opt);
        if (*disc) return cmd_discrepancy(opt);
        if (*champ) return cmd_champernowne(opt);
    } catch (const cn::ResourceLimit& e) {
        std::cerr << "error: " << e.what() << " (required stages: " << e.required_stages() << ")\n";
        return kExitResource;
    } catch (const cn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
