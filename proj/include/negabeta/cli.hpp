#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "negabeta/io.hpp"

namespace negabeta::cli {

enum ExitCode { kOk = 0, kInternal = 1, kDomain = 2, kUnresolved = 3 };

inline int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return kDomain;
        case ErrorKind::Unresolved:
        case ErrorKind::PrecisionExhausted: return kUnresolved;
        case ErrorKind::Internal: return kInternal;
    }
    return kInternal;
}

/// Decimal precision in bits, from NEGABETA_PRECISION when set.
inline unsigned precision_from_env() {
    const char* env = std::getenv("NEGABETA_PRECISION");
    if (!env || !*env) return kDefaultPrecisionBits;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end || v < 64 || v > 65536) fail(ErrorKind::Domain, "NEGABETA_PRECISION must be an integer in [64, 65536]");
    return static_cast<unsigned>(v);
}

namespace detail {

struct Options {
    int digits = 15;
    unsigned jobs = 1;
    std::string beta, beta1, beta2, pi1, target, seq, word, emit = "json", x = "1", at, tol = "1/1000000000000";
    std::optional<long> shift;
    size_t n = 20, budget = kDefaultBudget, count = 8, prefix = 20, max_steps = 64;
    bool normalize = false, canonicalize = false;
};

/// π(1) from --pi1, or from the orbit of 1 of --beta.
inline EvPeriodic expansion_of_one(const Options& o, unsigned bits) {
    if (!o.pi1.empty()) return EvPeriodic::parse(o.pi1);
    if (o.beta.empty()) fail(ErrorKind::Domain, "need --pi1 or --beta");
    auto pi = pi_of_one(make_beta(o.beta, bits), o.budget);
    if (!pi.expansion) fail(ErrorKind::Unresolved, "orbit of 1 not resolved within budget " + std::to_string(o.budget));
    return *pi.expansion;
}

}  // namespace detail

/// Runs one command; JSON goes to `out` (DOT for `sft --emit=dot`), diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using io::json;
    detail::Options o;
    CLI::App app{"Negative beta-transformation toolkit", "negabeta"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--digits", o.digits, "Decimal places in numeric renderings")->check(CLI::Range(0, 1000));
    app.add_option("--jobs", o.jobs, "Worker threads (computations are sequential; accepted for compatibility)")
        ->check(CLI::PositiveNumber);

    auto add_beta = [&](CLI::App* s, bool required = true) {
        auto* opt = s->add_option("--beta", o.beta, "Base spec: pisot2:p=,q= | multinacci:q=,m= | poly:[..]@(lo,hi) | dec:x");
        if (required) opt->required();
    };
    auto add_budget = [&](CLI::App* s) { s->add_option("--budget", o.budget, "Iteration budget")->check(CLI::PositiveNumber); };

    auto* expand_cmd = app.add_subcommand("expand", "Digits of x in base -beta");
    add_beta(expand_cmd);
    expand_cmd->add_option("--x", o.x, "Rational point in (0, 1]");
    expand_cmd->add_option("--n", o.n, "Number of digits");

    auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of 1 with cycle detection");
    add_beta(orbit_cmd);
    add_budget(orbit_cmd);

    auto* density_cmd = app.add_subcommand("density", "Invariant density");
    add_beta(density_cmd);
    add_budget(density_cmd);
    density_cmd->add_flag("--normalize", o.normalize, "Divide values by K");
    density_cmd->add_option("--at", o.at, "Evaluate the density series at this rational point instead");
    density_cmd->add_option("--tol", o.tol, "Tail bound for --at");

    auto* compare_cmd = app.add_subcommand("measure-compare", "Whether two normalized densities coincide");
    compare_cmd->add_option("--beta1", o.beta1, "First base")->required();
    auto* b2 = compare_cmd->add_option("--beta2", o.beta2, "Second base");
    compare_cmd->add_option("--shift", o.shift, "Use beta1 + shift as the second base")->excludes(b2);
    add_budget(compare_cmd);

    auto* entropy_cmd = app.add_subcommand("entropy", "Word counts and entropy of the -beta shift");
    add_beta(entropy_cmd, false);
    entropy_cmd->add_option("--pi1", o.pi1, "Expansion of 1 as pre|period");
    entropy_cmd->add_option("--n", o.n, "Word length");
    add_budget(entropy_cmd);

    auto* sft_cmd = app.add_subcommand("sft", "Automaton recognizing the -beta shift");
    add_beta(sft_cmd, false);
    sft_cmd->add_option("--pi1", o.pi1, "Expansion of 1 as pre|period");
    sft_cmd->add_option("--emit", o.emit, "Output format")->check(CLI::IsMember({"json", "dot"}));
    sft_cmd->add_option("--word", o.word, "Also report whether this word occurs in the shift");
    add_budget(sft_cmd);

    auto* match_cmd = app.add_subcommand("match", "Matching time");
    add_beta(match_cmd);
    add_budget(match_cmd);

    auto* solve_cmd = app.add_subcommand("solve", "Base whose expansion of 1 is the target");
    solve_cmd->add_option("--target", o.target, "Expansion of 1 as pre|period")->required();
    solve_cmd->add_flag("--canonicalize", o.canonicalize, "Rewrite an invalid candidate to its valid partner first");
    solve_cmd->add_option("--max-steps", o.max_steps, "Rewrite limit for --canonicalize");

    auto* approx_cmd = app.add_subcommand("approx", "Simple bases approaching beta");
    add_beta(approx_cmd);
    approx_cmd->add_option("--count", o.count, "Maximum number of candidates");
    approx_cmd->add_option("--prefix", o.prefix, "Prefix length of the expansion of 1");
    add_budget(approx_cmd);

    auto* validate_cmd = app.add_subcommand("validate", "Whether a sequence is the expansion of 1 for some base");
    validate_cmd->add_option("--seq", o.seq, "Sequence as pre|period")->required();

    auto* w_cmd = app.add_subcommand("w-word", "Prefix of the substitution fixed point w");
    w_cmd->add_option("--n", o.n, "Prefix length");

    auto emit_error = [&](const std::string& kind, const std::string& message) {
        out << json{{"error", kind}, {"message", message}}.dump() << "\n";
        err << "negabeta: " << message << "\n";
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return kDomain;
    }

    try {
        const unsigned bits = precision_from_env();
        const int dg = o.digits;
        json result;
        int code = kOk;

        if (*expand_cmd) {
            Beta b = make_beta(o.beta, bits);
            Rational x = parse_rational(o.x);
            result = {{"beta", io::beta(b, dg)}, {"x", io::rational(x)}, {"digits", io::word(expand(b, x, o.n))}};
        } else if (*orbit_cmd) {
            OrbitRecord r = orbit_of_one(make_beta(o.beta, bits), o.budget);
            result = io::orbit(r, dg);
            if (!r.classification.resolved()) code = kUnresolved;
        } else if (*density_cmd) {
            Beta b = make_beta(o.beta, bits);
            if (!o.at.empty()) {
                auto v = density_at(b, parse_rational(o.at), parse_rational(o.tol));
                result = {{"x", o.at}, {"partial_sum", io::value(v.partial_sum, dg)},
                          {"tail_bound", io::rational(v.tail_bound)}, {"terms", v.terms}};
            } else {
                auto d = density(b, o.budget);
                result = io::density(d, o.normalize, dg);
                result["limits"] = io::limits(limits(b, o.budget), dg);
            }
        } else if (*compare_cmd) {
            Beta a = make_beta(o.beta1, bits);
            if (o.beta2.empty() && !o.shift) fail(ErrorKind::Domain, "need --beta2 or --shift");
            Beta c = o.shift ? a.shifted(Integer(*o.shift)) : make_beta(o.beta2, bits);
            auto r = densities_coincide(a, c, o.budget);
            result = io::coincidence(r);
            result["beta1"] = a.spec();
            result["beta2"] = c.spec();
            if (r.verdict == Coincidence::Unresolved) code = kUnresolved;
        } else if (*entropy_cmd) {
            EvPeriodic pi = detail::expansion_of_one(o, bits);
            if (o.n < 2) fail(ErrorKind::Domain, "--n must be at least 2");
            SftAutomaton a = build_sft(pi);
            json counts = json::array();
            for (const auto& c : count_words(a, o.n)) counts.push_back(c.get_str());
            auto est = entropy_estimate(pi, o.n);
            result = {{"pi1", io::sequence(pi)}, {"counts", counts}, {"estimate", est.estimate},
                      {"upper_bound", est.upper_bound}, {"is_sft", a.is_sft}};
            if (a.is_sft) result["automaton_entropy"] = automaton_entropy(a);
        } else if (*sft_cmd) {
            EvPeriodic pi = detail::expansion_of_one(o, bits);
            SftAutomaton a = build_sft(pi);
            if (o.emit == "dot") {
                out << a.to_dot();
                return kOk;
            }
            result = io::automaton(a);
            result["pi1"] = io::sequence(pi);
            result["is_sft"] = a.is_sft;
            if (!o.word.empty()) result["word_in_shift"] = a.run(parse_word(o.word)).has_value();
        } else if (*match_cmd) {
            auto r = matching_time(make_beta(o.beta, bits), o.budget);
            result = io::matching(r, dg);
            if (r.verdict == MatchingReport::Verdict::Unknown) code = kUnresolved;
        } else if (*solve_cmd) {
            EvPeriodic t = EvPeriodic::parse(o.target);
            result = {{"target", io::sequence(t)}};
            if (o.canonicalize) {
                auto c = canonicalize_expansion_candidate(t, o.max_steps);
                json trace = json::array();
                for (const auto& s : c.trace) trace.push_back(io::sequence(s));
                result["trace"] = trace;
                if (!c.ok) fail(ErrorKind::Domain, "no valid partner reached from " + t.str());
                t = c.result;
                result["canonical"] = io::sequence(t);
            }
            result["beta"] = io::beta(beta_from_expansion(t), dg);
        } else if (*approx_cmd) {
            auto rep = approximate_simple_numbers(make_beta(o.beta, bits), o.count, o.prefix, o.budget);
            json rows = json::array();
            for (const auto& r : rep.rows) rows.push_back(io::approximation(r, dg));
            result = {{"already_simple", rep.already_simple}, {"source_prefix", to_string(rep.source_prefix)},
                      {"divergence_index", rep.divergence_index ? json(*rep.divergence_index) : json(nullptr)},
                      {"rows", rows}};
        } else if (*validate_cmd) {
            EvPeriodic s = EvPeriodic::parse(o.seq);
            result = io::validity(is_valid_expansion_of_one(s));
            result["seq"] = io::sequence(s);
            result["self_admissible"] = is_self_admissible(s).ok;
        } else if (*w_cmd) {
            result = to_string(limit_word_prefix(o.n));
        }
        out << result.dump() << "\n";
        return code;
    } catch (const Error& e) {
        emit_error(to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return kInternal;
    }
}

}  // namespace negabeta::cli
