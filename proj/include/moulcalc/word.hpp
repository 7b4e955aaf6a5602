#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "moulcalc/letter.hpp"

namespace moulcalc {

/// A finite sequence of letters. The empty word is the unit of concatenation.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}
    static Word empty() { return Word{}; }
    static Word single(Letter l) { return Word({std::move(l)}); }

    int length() const { return static_cast<int>(letters.size()); }
    bool is_empty() const { return letters.empty(); }
    const Letter& operator[](int i) const { return letters[static_cast<std::size_t>(i)]; }

    Word prefix(int k) const { return Word(std::vector<Letter>(letters.begin(), letters.begin() + k)); }
    Word suffix_from(int k) const { return Word(std::vector<Letter>(letters.begin() + k, letters.end())); }
    Word slice(int from, int to) const {
        return Word(std::vector<Letter>(letters.begin() + from, letters.begin() + to));
    }

    friend Word operator+(const Word& a, const Word& b) {
        Word r = a;
        r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
        return r;
    }
    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return std::lexicographical_compare(a.letters.begin(), a.letters.end(), b.letters.begin(), b.letters.end());
    }

    std::string str() const {
        if (is_empty()) return "()";
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i) os << ',';
            os << letters[i].str();
        }
        os << ')';
        return os.str();
    }
};

/// Multiset of words with explicit multiplicities. Shuffle sums over words
/// with repeated letters need the counts, so they are never collapsed.
using WordMultiset = std::map<Word, std::int64_t>;

inline std::int64_t total_count(const WordMultiset& m) {
    std::int64_t t = 0;
    for (const auto& [w, c] : m) t += c;
    return t;
}

namespace detail {

inline void shuffle_rec(const Word& u, int i, const Word& v, int j, std::vector<Letter>& acc, WordMultiset& out) {
    if (i == u.length() && j == v.length()) {
        out[Word(acc)] += 1;
        return;
    }
    if (i < u.length()) {
        acc.push_back(u[i]);
        shuffle_rec(u, i + 1, v, j, acc, out);
        acc.pop_back();
    }
    if (j < v.length()) {
        acc.push_back(v[j]);
        shuffle_rec(u, i, v, j + 1, acc, out);
        acc.pop_back();
    }
}

inline void csh_rec(const Alphabet& alpha, const Word& u, int i, const Word& v, int j, std::vector<Letter>& acc,
                    WordMultiset& out) {
    if (i == u.length() && j == v.length()) {
        out[Word(acc)] += 1;
        return;
    }
    if (i < u.length()) {
        acc.push_back(u[i]);
        csh_rec(alpha, u, i + 1, v, j, acc, out);
        acc.pop_back();
    }
    if (j < v.length()) {
        acc.push_back(v[j]);
        csh_rec(alpha, u, i, v, j + 1, acc, out);
        acc.pop_back();
    }
    if (i < u.length() && j < v.length()) {
        acc.push_back(alpha.add(u[i], v[j]));
        csh_rec(alpha, u, i + 1, v, j + 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace detail

/// Battage: all interleavings of w1 and w2 preserving the internal order of
/// each factor, with multiplicities. |sh(w1,w2)| = C(n+m, n) counted with
/// multiplicity.
inline WordMultiset shuffle(const Word& w1, const Word& w2) {
    WordMultiset out;
    std::vector<Letter> acc;
    acc.reserve(static_cast<std::size_t>(w1.length() + w2.length()));
    detail::shuffle_rec(w1, 0, w2, 0, acc, out);
    return out;
}

/// Battage contractant: interleavings plus every variant where one or more
/// adjacent cross pairs are replaced by their semigroup sum.
inline WordMultiset contracting_shuffle(const Alphabet& alpha, const Word& w1, const Word& w2) {
    if (!alpha.has_semigroup()) throw no_semigroup("contracting shuffle needs a semigroup alphabet");
    WordMultiset out;
    std::vector<Letter> acc;
    acc.reserve(static_cast<std::size_t>(w1.length() + w2.length()));
    detail::csh_rec(alpha, w1, 0, w2, 0, acc, out);
    return out;
}

/// ||w|| = omega_1 + ... + omega_r in the letter semigroup.
inline Letter norm(const Alphabet& alpha, const Word& w) {
    if (w.is_empty()) throw empty_word_error("norm of the empty word");
    if (!alpha.has_semigroup()) throw no_semigroup("norm needs a semigroup alphabet");
    Letter acc = w[0];
    for (int i = 1; i < w.length(); ++i) acc = alpha.add(acc, w[i]);
    return acc;
}

/// Additive weight of a whole word: sum of letter weights.
inline Scalar word_weight(const Alphabet& alpha, const Word& w) {
    Scalar s(0);
    for (const auto& l : w.letters) s += alpha.additive_weight(l);
    return s;
}

/// Multiplicative weight of a whole word: product of the e^omega of letters.
inline Scalar word_mult_weight(const Alphabet& alpha, const Word& w) {
    Scalar s(1);
    for (const auto& l : w.letters) s *= alpha.multiplicative_weight(l);
    return s;
}

/// The involution ret(w) = (omega_r, ..., omega_1).
inline Word retrograde(const Word& w) {
    Word r = w;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

/// All words of length exactly r over the given letters, in lexicographic
/// order of index patterns.
inline std::vector<Word> words_of_length(const std::vector<Letter>& letters, int r) {
    std::vector<Word> out;
    if (r == 0) {
        out.push_back(Word::empty());
        return out;
    }
    std::vector<int> idx(static_cast<std::size_t>(r), 0);
    const int k = static_cast<int>(letters.size());
    if (k == 0) return out;
    while (true) {
        std::vector<Letter> ls;
        ls.reserve(static_cast<std::size_t>(r));
        for (int i : idx) ls.push_back(letters[static_cast<std::size_t>(i)]);
        out.push_back(Word(std::move(ls)));
        int p = r - 1;
        while (p >= 0 && idx[static_cast<std::size_t>(p)] == k - 1) idx[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
        ++idx[static_cast<std::size_t>(p)];
    }
    return out;
}

/// All words of length <= maxlen, shortest first.
inline std::vector<Word> words_up_to(const std::vector<Letter>& letters, int maxlen) {
    std::vector<Word> out;
    for (int r = 0; r <= maxlen; ++r) {
        auto layer = words_of_length(letters, r);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace moulcalc
