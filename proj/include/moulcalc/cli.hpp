#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "moulcalc/arbor.hpp"
#include "moulcalc/catalog.hpp"
#include "moulcalc/ilsym.hpp"
#include "moulcalc/io.hpp"
#include "moulcalc/normalform.hpp"
#include "moulcalc/sampling.hpp"

namespace moulcalc {
namespace cli {

namespace detail {

struct Options {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 0;
};

inline int emit(const io::json& report, const Options& opt, std::ostream& out, const std::string& text_summary,
                int code) {
    if (!opt.output.empty()) {
        std::ofstream f(opt.output);
        f << report.dump(2) << "\n";
    }
    if (opt.format == "json")
        out << report.dump(2) << "\n";
    else
        out << text_summary << "\n";
    return code;
}

/// Catalog moulds over multiplicative weights.
inline bool is_multiplicative_name(const std::string& name) {
    return name == "Se" || name == "Ne" || name == "Ne_inv";
}

/// Build the alphabet implied by a word's letters plus optional spectra.
inline Alphabet alphabet_for(const std::string& name, const Word& w, const std::vector<Scalar>& lambda,
                             const std::vector<Scalar>& multipliers) {
    std::vector<Letter> letters = w.letters;
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    if (!w.is_empty() && w[0].is_degree()) {
        int nu = static_cast<int>(w[0].degree_vector().size());
        return Alphabet::degrees(nu, lambda, std::move(letters), multipliers);
    }
    if (is_multiplicative_name(name)) return Alphabet::abstract_multiplicative(std::move(letters));
    return Alphabet::abstract_additive(std::move(letters));
}

inline Mould build_named(const std::string& name, const Alphabet& a, const Scalar& sig_q, int sig_cap) {
    catalog::Options copt;
    copt.sig_q = sig_q;
    copt.sig_cap = sig_cap;
    return catalog::make(name, a, copt);
}

inline io::json letters_json(const Alphabet& a) {
    io::json arr = io::json::array();
    for (const auto& l : a.letters) arr.push_back(io::letter_to_json(l));
    return arr;
}

}  // namespace detail

/// Run the command line. Returns 0 on success / verified, 2 when a check
/// verified false (a counterexample is emitted), 1 on usage or input errors.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"moulcalc: exact mould calculus and normal forms of local objects"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    detail::Options opt;
    app.add_option("--format", opt.format, "output format: json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--output", opt.output, "also write the JSON report to this path");
    app.add_option("--seed", opt.seed, "seed for randomized checks (default 0)");

    // ---- mould ----------------------------------------------------------
    auto* mould_cmd = app.add_subcommand("mould", "evaluate, check and combine moulds");
    mould_cmd->require_subcommand(1);

    std::string name, word_text, symmetry_text, lambda_text, mult_text, letters_text;
    std::string op_name, lhs_name, rhs_name;
    int maxlen = 4, trials = 8, sig_cap = 6;
    std::string sig_q_text = "2";
    bool do_export = false;

    auto* show = mould_cmd->add_subcommand("show", "print the exact value of a named mould on a word");
    show->add_option("--name", name, "catalog mould name")->required();
    show->add_option("--word", word_text, "word, e.g. \"2,5\" or \"[1,0],[0,1]\"");
    show->add_option("--lambda", lambda_text, "spectrum for degree-vector letters");
    show->add_option("--multipliers", mult_text, "multiplicative spectrum for degree-vector letters");
    show->add_option("--max-len", maxlen, "table length bound used with --export");
    show->add_option("--sig-q", sig_q_text, "q parameter for Sig");
    show->add_option("--sig-cap", sig_cap, "generating-series cap for Sig");
    show->add_flag("--export", do_export, "dump the table over the word's letters as JSON");

    std::string check_input;
    bool check_multiplicative = false;
    auto* check = mould_cmd->add_subcommand("check", "verify a declared or requested symmetry");
    check->add_option("--name", name, "catalog mould name");
    check->add_option("--input", check_input, "check an imported table (JSON) instead of a catalog mould");
    check->add_flag("--multiplicative", check_multiplicative, "imported table letters combine multiplicatively");
    check->add_option("--symmetry", symmetry_text, "alternal|symetral|alternel|symetrel|alternil|symetril");
    check->add_option("--max-len", maxlen, "total factor length bound");
    check->add_option("--trials", trials, "number of sampled alphabets");
    check->add_option("--sig-q", sig_q_text, "q parameter for Sig");
    check->add_option("--sig-cap", sig_cap, "generating-series cap for Sig");

    auto* opc = mould_cmd->add_subcommand("op", "combine catalog moulds and evaluate");
    opc->add_option("--op", op_name, "add|mul|compose|mulinv|compinv|exp|log|nabla|retro")->required();
    opc->add_option("--lhs", lhs_name, "left operand (catalog name)")->required();
    opc->add_option("--rhs", rhs_name, "right operand (catalog name, binary ops)");
    opc->add_option("--word", word_text, "word to evaluate the result on")->required();
    opc->add_option("--lambda", lambda_text, "spectrum for degree-vector letters");
    opc->add_option("--multipliers", mult_text, "multiplicative spectrum for degree-vector letters");

    // ---- field ----------------------------------------------------------
    auto* field_cmd = app.add_subcommand("field", "normal forms of prepared vector fields");
    field_cmd->require_subcommand(1);
    std::string input_path;
    int degree = 5;
    bool verify_oracle = false;

    auto* flin = field_cmd->add_subcommand("linearize", "formal linearization through Na");
    flin->add_option("--input", input_path, "field JSON")->required();
    flin->add_option("--degree", degree, "jet truncation degree");
    flin->add_flag("--verify-oracle", verify_oracle, "cross-check against the classical oracle");

    auto* fpre = field_cmd->add_subcommand("prenormal", "pruned prenormal form through Tram");
    fpre->add_option("--input", input_path, "field JSON")->required();
    fpre->add_option("--degree", degree, "jet truncation degree");
    fpre->add_flag("--verify-oracle", verify_oracle, "compare resonant support with the dulac oracle");

    auto* fscan = field_cmd->add_subcommand("scan", "list resonant words");
    fscan->add_option("--input", input_path, "field JSON")->required();
    fscan->add_option("--max-len", maxlen, "maximum word length");

    // ---- diffeo ---------------------------------------------------------
    auto* diffeo_cmd = app.add_subcommand("diffeo", "normal forms of prepared diffeos");
    diffeo_cmd->require_subcommand(1);
    auto* dlin = diffeo_cmd->add_subcommand("linearize", "formal linearization through the Ne family");
    dlin->add_option("--input", input_path, "diffeo JSON")->required();
    dlin->add_option("--degree", degree, "jet truncation degree");
    dlin->add_flag("--verify-oracle", verify_oracle, "cross-check against the classical oracle");

    // ---- arb ------------------------------------------------------------
    auto* arb_cmd = app.add_subcommand("arb", "arborification");
    arb_cmd->require_subcommand(1);
    auto* aexp = arb_cmd->add_subcommand("expand", "forests, proj counts and the identity residual for a word");
    aexp->add_option("--word", word_text, "word of degree vectors, e.g. \"[1,0],[0,1]\"")->required();
    aexp->add_option("--lambda", lambda_text, "spectrum (defaults to 2,5,...)");
    aexp->add_option("--degree", degree, "jet truncation degree for the residual check");

    try {
        std::vector<const char*> argv;
        argv.push_back("moulcalc");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    Rng rng(opt.seed);
    try {
        // ---- mould show --------------------------------------------------
        if (show->parsed()) {
            Word w = io::parse_word(word_text);
            Alphabet a = detail::alphabet_for(name, w, io::parse_scalar_list(lambda_text),
                                              io::parse_scalar_list(mult_text));
            Mould m = detail::build_named(name, a, parse_scalar(sig_q_text), sig_cap);
            io::json rep;
            rep["name"] = name;
            rep["word"] = w.str();
            std::string value;
            try {
                value = to_string(m(w));
            } catch (const pole_at_word& p) {
                rep["pole"] = p.word_repr;
                return detail::emit(rep, opt, out, "pole at " + p.word_repr, 2);
            }
            rep["value"] = value;
            if (do_export) rep["table"] = io::mould_table_to_json(m, maxlen);
            return detail::emit(rep, opt, out, value, 0);
        }

        // ---- mould check -------------------------------------------------
        if (check->parsed()) {
            if (!check_input.empty()) {
                // imported table: a single deterministic check over its own letters
                auto k = symmetry_from_name(symmetry_text);
                if (!k) throw mould_error("--symmetry is required when checking an imported table");
                Mould m = io::mould_from_json(
                    io::load_json(check_input),
                    check_multiplicative ? SemigroupKind::multiplicative : SemigroupKind::additive);
                auto r = check_symmetry(m, *k, std::min(maxlen, m.bound()), /*skip_poles=*/true);
                io::json rep = io::symmetry_report_to_json(r);
                rep["input"] = check_input;
                std::string summary = std::string(symmetry_name(*k)) + (r.ok ? ": verified" : ": counterexample found");
                return detail::emit(rep, opt, out, summary, r.ok ? 0 : 2);
            }
            const catalog::NamedMould* entry = catalog::find(name);
            if (!entry) throw mould_error("unknown catalog mould '" + name + "'");
            SymmetryKind kind = entry->declared;
            if (!symmetry_text.empty()) {
                auto k = symmetry_from_name(symmetry_text);
                if (!k) throw mould_error("unknown symmetry '" + symmetry_text + "'");
                kind = *k;
            }
            io::json rep;
            rep["name"] = name;
            rep["symmetry"] = symmetry_name(kind);
            rep["max_len"] = maxlen;
            rep["seed"] = opt.seed;
            bool all_ok = true;
            io::json runs = io::json::array();
            if (kind == SymmetryKind::alternil || kind == SymmetryKind::symetril) {
                Scalar q = parse_scalar(sig_q_text);
                auto rule = catalog::sig_rule(q, sig_cap);
                int safe = sig_cap - maxlen;
                auto il = check_il(rule, kind, maxlen, safe);
                all_ok = il.ok;
                io::json jr;
                jr["ok"] = il.ok;
                jr["q"] = to_string(q);
                jr["cap"] = sig_cap;
                jr["safe_degree"] = safe;
                if (!il.ok) jr["counterexample"] = il.counterexample;
                runs.push_back(jr);
            } else {
                for (int t = 0; t < trials; ++t) {
                    Alphabet a;
                    if (detail::is_multiplicative_name(name)) {
                        a = sample_multiplicative_alphabet(maxlen, rng);
                    } else if (name == "Sam" || name == "Tram") {
                        a = sample_additive_alphabet(maxlen - 1, rng);
                        a.letters.push_back(Letter::weight(Scalar(0)));
                    } else {
                        a = sample_additive_alphabet(maxlen, rng);
                    }
                    Mould m = detail::build_named(name, a, parse_scalar(sig_q_text), sig_cap);
                    auto r = check_symmetry(m, kind, maxlen, /*skip_poles=*/true);
                    all_ok = all_ok && r.ok;
                    io::json jr = io::symmetry_report_to_json(r);
                    jr["letters"] = detail::letters_json(a);
                    runs.push_back(jr);
                }
            }
            rep["runs"] = runs;
            rep["ok"] = all_ok;
            std::string summary = name + " " + std::string(symmetry_name(kind)) +
                                  (all_ok ? ": verified" : ": counterexample found");
            return detail::emit(rep, opt, out, summary, all_ok ? 0 : 2);
        }

        // ---- mould op ----------------------------------------------------
        if (opc->parsed()) {
            Word w = io::parse_word(word_text);
            Alphabet a = detail::alphabet_for(lhs_name, w, io::parse_scalar_list(lambda_text),
                                              io::parse_scalar_list(mult_text));
            Mould lhs = detail::build_named(lhs_name, a, Scalar(2), 6);
            const bool binary = op_name == "add" || op_name == "mul" || op_name == "compose";
            if (binary && rhs_name.empty()) throw mould_error("--rhs is required for '" + op_name + "'");
            std::optional<Mould> rhs;
            if (!rhs_name.empty()) rhs = detail::build_named(rhs_name, a, Scalar(2), 6);
            Mould result = lhs;
            if (op_name == "add") result = add(lhs, *rhs);
            else if (op_name == "mul") result = mul(lhs, *rhs);
            else if (op_name == "compose") result = compose(lhs, *rhs);
            else if (op_name == "mulinv") result = mul_inverse(lhs);
            else if (op_name == "compinv") result = comp_inverse(lhs);
            else if (op_name == "exp") result = mexp(lhs);
            else if (op_name == "log") result = mlog(lhs);
            else if (op_name == "nabla") result = nabla(lhs);
            else if (op_name == "retro") result = retrograde_mould(lhs);
            else throw mould_error("unknown operation '" + op_name + "'");
            io::json rep;
            rep["op"] = op_name;
            rep["lhs"] = lhs_name;
            if (!rhs_name.empty()) rep["rhs"] = rhs_name;
            rep["word"] = w.str();
            std::string value = to_string(result(w));
            rep["value"] = value;
            return detail::emit(rep, opt, out, value, 0);
        }

        // ---- field -------------------------------------------------------
        if (flin->parsed() || fpre->parsed() || fscan->parsed()) {
            PreparedField f = io::field_from_json(io::load_json(input_path));
            io::json rep;
            rep["nu"] = f.nu;
            if (fscan->parsed()) {
                io::json res = io::json::array();
                for (const auto& w : resonance_scan(f, maxlen)) res.push_back(w.str());
                rep["resonant_words"] = res;
                return detail::emit(rep, opt, out, std::to_string(res.size()) + " resonant word(s)", 0);
            }
            if (flin->parsed()) {
                NormalFormResult lin;
                try {
                    lin = linearize(f, degree);
                } catch (const resonant_error& e) {
                    rep["resonant"] = e.word_repr;
                    return detail::emit(rep, opt, out, std::string("resonant: ") + e.word_repr, 2);
                }
                rep["normalizer"] = io::jets_to_json(lin.normalizer);
                rep["conjugated"] = io::jets_to_json(lin.conjugated);
                rep["resonant_words"] = io::json::array();
                bool ok = true;
                if (verify_oracle) {
                    auto orc = oracle_normalize(f, degree, NormalizeMode::linearize);
                    ok = orc.normalizer == lin.normalizer && orc.conjugated == lin.conjugated;
                    rep["oracle_match"] = ok;
                }
                return detail::emit(rep, opt, out, ok ? "linearized" : "oracle mismatch", ok ? 0 : 2);
            }
            // prenormal
            auto jets = prenormal_tram(f, degree);
            rep["conjugated"] = io::jets_to_json(jets);
            io::json res = io::json::array();
            for (const auto& w : resonance_scan(f, degree)) res.push_back(w.str());
            rep["resonant_words"] = res;
            bool ok = true;
            if (verify_oracle) {
                auto orc = oracle_normalize(f, degree, NormalizeMode::dulac);
                auto count = [](const std::vector<Jet>& js) {
                    int c = 0;
                    for (const auto& j : js)
                        for (const auto& [m, co] : j.p.terms())
                            if (monomial_degree(m) > 1) ++c;
                    return c;
                };
                ok = count(orc.conjugated) == count(jets);
                rep["oracle_resonant_count_match"] = ok;
            }
            return detail::emit(rep, opt, out, ok ? "prenormalized" : "oracle mismatch", ok ? 0 : 2);
        }

        // ---- diffeo ------------------------------------------------------
        if (dlin->parsed()) {
            PreparedDiffeo d = io::diffeo_from_json(io::load_json(input_path), degree);
            io::json rep;
            rep["nu"] = d.nu;
            NormalFormResult lin;
            try {
                lin = diffeo_linearize(d, degree);
            } catch (const resonant_error& e) {
                rep["resonant"] = e.word_repr;
                return detail::emit(rep, opt, out, std::string("resonant: ") + e.word_repr, 2);
            }
            rep["normalizer"] = io::jets_to_json(lin.normalizer);
            rep["conjugated"] = io::jets_to_json(lin.conjugated);
            bool ok = true;
            if (verify_oracle) {
                auto orc = diffeo_oracle(d, degree);
                ok = orc.normalizer == lin.normalizer;
                rep["oracle_match"] = ok;
            }
            return detail::emit(rep, opt, out, ok ? "linearized" : "oracle mismatch", ok ? 0 : 2);
        }

        // ---- arb expand ---------------------------------------------------
        if (aexp->parsed()) {
            Word w = io::parse_word(word_text);
            if (w.is_empty() || !w[0].is_degree()) throw mould_error("arb expand needs degree-vector letters");
            int nu = static_cast<int>(w[0].degree_vector().size());
            std::vector<Scalar> lambda = io::parse_scalar_list(lambda_text);
            if (lambda.empty())
                for (int i = 0; i < nu; ++i) lambda.push_back(Scalar(2 + 3 * i));
            // seeded random derivations for the word's degrees
            PreparedField f;
            f.nu = nu;
            f.lambda = lambda;
            for (const auto& l : w.letters) {
                const DegreeVector& n = l.degree_vector();
                if (!is_admissible_degree(n)) throw inadmissible_degree("letter " + l.str());
                if (f.parts.count(n)) continue;
                std::vector<Scalar> alpha;
                for (int i = 0; i < nu; ++i) {
                    DegreeVector shifted = n;
                    shifted[static_cast<std::size_t>(i)] += 1;
                    bool valid = true;
                    for (auto v : shifted) valid = valid && v >= 0;
                    alpha.push_back(valid ? rng.small_rational() : Scalar(0));
                }
                f.parts[n] = HomOp::derivation(n, std::move(alpha));
            }
            io::json rep;
            rep["word"] = w.str();
            io::json classes = io::json::array();
            for (const auto& a : arb_classes_of(w)) {
                io::json c;
                c["forest"] = a.str();
                c["proj"] = proj(a, w);
                classes.push_back(c);
            }
            rep["classes"] = classes;
            bool zero = is_zero_operator(check_arb_identity(w, f, degree), nu, degree);
            rep["identity_residual_zero"] = zero;
            return detail::emit(rep, opt, out, zero ? "residual zero" : "residual nonzero", zero ? 0 : 2);
        }
    } catch (const mould_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace cli
}  // namespace moulcalc
