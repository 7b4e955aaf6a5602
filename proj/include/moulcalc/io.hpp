#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "moulcalc/localobj.hpp"
#include "moulcalc/symmetry.hpp"

namespace moulcalc {
namespace io {

using nlohmann::json;  // std::map-backed: object keys serialize sorted

// ---------------------------------------------------------------------------
// Words and letters

/// Parse one letter token: "[1,0]" as a degree vector, "3/2" as a rational
/// weight.
inline Letter parse_letter(const std::string& tok) {
    std::string t = tok;
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw mould_error("unterminated degree vector: " + tok);
        DegreeVector n;
        std::string body = t.substr(1, t.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) n.push_back(std::stoll(item));
        return Letter::degree(std::move(n));
    }
    return Letter::weight(parse_scalar(t));
}

/// Words are comma-separated letter tokens; degree vectors keep their inner
/// commas, e.g. "[1,0],[-1,2]" or "2,5,-3".
inline Word parse_word(const std::string& text) {
    std::vector<Letter> letters;
    std::string cur;
    int depth = 0;
    auto flush = [&]() {
        if (!cur.empty()) letters.push_back(parse_letter(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ' ') continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    return Word(std::move(letters));
}

inline std::vector<Scalar> parse_scalar_list(const std::string& text) {
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_scalar(item));
    return out;
}

inline json letter_to_json(const Letter& l) {
    if (l.is_degree()) {
        json arr = json::array();
        for (auto v : l.degree_vector()) arr.push_back(v);
        return arr;
    }
    return to_string(l.abstract_weight());
}

inline json word_to_json(const Word& w) {
    json arr = json::array();
    for (const auto& l : w.letters) arr.push_back(letter_to_json(l));
    return arr;
}

// ---------------------------------------------------------------------------
// Moulds and reports

inline json mould_table_to_json(const Mould& m, int maxlen) {
    json out;
    out["L"] = maxlen;
    json entries = json::array();
    for (const auto& w : words_up_to(m.alphabet().letters, maxlen)) {
        json e;
        e["word"] = w.str();
        try {
            e["value"] = to_string(m(w));
        } catch (const pole_at_word&) {
            e["value"] = "pole";
        }
        entries.push_back(e);
    }
    out["entries"] = entries;
    json letters = json::array();
    for (const auto& l : m.alphabet().letters) letters.push_back(letter_to_json(l));
    out["alphabet"] = letters;
    return out;
}

/// Import a table exported by mould_table_to_json. "pole" entries are
/// skipped; the alphabet kind must be supplied by the caller.
inline Mould mould_from_json(const json& j, SemigroupKind kind = SemigroupKind::additive) {
    std::vector<Letter> letters;
    for (const auto& l : j.at("alphabet")) {
        if (l.is_string())
            letters.push_back(Letter::weight(parse_scalar(l.get<std::string>())));
        else {
            DegreeVector n;
            for (const auto& v : l) n.push_back(v.get<std::int64_t>());
            letters.push_back(Letter::degree(std::move(n)));
        }
    }
    Alphabet a;
    a.kind = kind;
    a.letters = std::move(letters);
    if (!a.letters.empty() && a.letters[0].is_degree()) {
        a.degree_letters = true;
        a.nu = static_cast<int>(a.letters[0].degree_vector().size());
    }
    Mould::Table table;
    for (const auto& e : j.at("entries")) {
        std::string value = e.at("value").get<std::string>();
        if (value == "pole") continue;
        std::string word_text = e.at("word").get<std::string>();
        // strip the outer parentheses of Word::str()
        if (word_text.size() >= 2 && word_text.front() == '(' && word_text.back() == ')')
            word_text = word_text.substr(1, word_text.size() - 2);
        table[parse_word(word_text)] = parse_scalar(value);
    }
    return Mould(a, j.at("L").get<int>(), std::move(table));
}

inline json symmetry_report_to_json(const SymmetryReport& rep) {
    json out;
    out["kind"] = symmetry_name(rep.kind);
    out["max_len"] = rep.max_len;
    out["ok"] = rep.ok;
    if (rep.counterexample) {
        out["counterexample"] = {{"w1", rep.counterexample->first.str()}, {"w2", rep.counterexample->second.str()}};
        out["residual"] = to_string(rep.residual);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Local objects

inline std::vector<LocalTerm> parse_terms(const json& arr) {
    std::vector<LocalTerm> terms;
    for (const auto& t : arr) {
        LocalTerm lt;
        lt.coef = parse_scalar(t.at("coef").get<std::string>());
        for (const auto& e : t.at("exponents")) lt.exponents.push_back(e.get<int>());
        lt.direction = t.at("direction").get<int>();
        terms.push_back(std::move(lt));
    }
    return terms;
}

/// Field input: {"nu": 2, "lambda": ["2","5"],
///               "terms": [{"coef":"1","exponents":[2,0],"direction":0}]}
inline PreparedField field_from_json(const json& j) {
    int nu = j.at("nu").get<int>();
    std::vector<Scalar> lambda;
    for (const auto& l : j.at("lambda")) lambda.push_back(parse_scalar(l.get<std::string>()));
    std::vector<LocalTerm> terms;
    if (j.contains("terms")) terms = parse_terms(j.at("terms"));
    return decompose(nu, std::move(lambda), terms);
}

/// Diffeo input: as the field, with "multipliers" in place of "lambda".
inline PreparedDiffeo diffeo_from_json(const json& j, int trunc) {
    int nu = j.at("nu").get<int>();
    std::vector<Scalar> q;
    for (const auto& l : j.at("multipliers")) q.push_back(parse_scalar(l.get<std::string>()));
    std::vector<LocalTerm> terms;
    if (j.contains("terms")) terms = parse_terms(j.at("terms"));
    return diffeo_parts(nu, std::move(q), terms, trunc);
}

inline json jet_to_json(const Jet& jet) {
    json arr = json::array();
    for (const auto& [m, c] : jet.p.terms()) {
        json term;
        term["coef"] = to_string(c);
        term["exponents"] = m;
        arr.push_back(term);
    }
    return arr;
}

inline json jets_to_json(const std::vector<Jet>& jets) {
    json arr = json::array();
    for (const auto& j : jets) arr.push_back(jet_to_json(j));
    return arr;
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mould_error("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace io
}  // namespace moulcalc
