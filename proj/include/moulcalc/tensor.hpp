#pragma once

#include <map>
#include <utility>

#include "moulcalc/mould_ops.hpp"

namespace moulcalc {

/// Finitely supported element of the truncated tensor square of the word
/// algebra: a map (w1, w2) -> Scalar with |w1| + |w2| bounded.
struct TensorElement {
    int max_total_len = 0;
    std::map<std::pair<Word, Word>, Scalar> terms;

    void add(const Word& a, const Word& b, const Scalar& c) {
        if (c == 0) return;
        if (a.length() + b.length() > max_total_len) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    friend TensorElement operator-(const TensorElement& x, const TensorElement& y) {
        TensorElement r = x;
        for (const auto& [k, c] : y.terms) r.add(k.first, k.second, -c);
        return r;
    }
};

enum class Coproduct {
    delta,       // Delta(x) = x (x) 1 + 1 (x) x on letters
    delta_star,  // Delta_*(y_r) = sum_{i+j=r} y_i (x) y_j, y_0 = empty
};

namespace detail {

/// Delta(w): sum over index subsets S of w_S (x) w_{S^c}, 2^r terms.
template <class F>
void delta_splittings(const Word& w, F&& f) {
    const int r = w.length();
    const unsigned total = 1u << r;
    for (unsigned mask = 0; mask < total; ++mask) {
        std::vector<Letter> left, right;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i))
                left.push_back(w[i]);
            else
                right.push_back(w[i]);
        f(Word(std::move(left)), Word(std::move(right)));
    }
}

/// Decompositions k + l = s of one letter for Delta_*; the semigroup-neutral
/// part stands for the empty contribution. Enumerable cases: nonnegative
/// integer additive weights (k + l = s), positive integer multiplicative
/// weights (divisor pairs d * (u/d) = u, 1 = neutral), and componentwise
/// nonnegative degree vectors.
inline std::vector<std::pair<std::optional<Letter>, std::optional<Letter>>> star_decompositions(
    const Alphabet& alpha, const Letter& l) {
    std::vector<std::pair<std::optional<Letter>, std::optional<Letter>>> out;
    auto push = [&](std::optional<Letter> a, std::optional<Letter> b) { out.emplace_back(std::move(a), std::move(b)); };
    if (!l.is_degree()) {
        const Scalar& s = l.abstract_weight();
        if (alpha.kind == SemigroupKind::multiplicative) {
            if (!is_integer(s) || s <= 0) throw no_semigroup("Delta_* needs positive integer multiplicative weights");
            std::int64_t n = static_cast<std::int64_t>(numerator(s));
            for (std::int64_t d = 1; d <= n; ++d) {
                if (n % d != 0) continue;
                std::optional<Letter> a = d == 1 ? std::nullopt : std::optional<Letter>(Letter::weight(Scalar(d)));
                std::optional<Letter> b =
                    d == n ? std::nullopt : std::optional<Letter>(Letter::weight(Scalar(n / d)));
                push(std::move(a), std::move(b));
            }
            return out;
        }
        if (alpha.kind != SemigroupKind::additive || !is_integer(s) || s < 0)
            throw no_semigroup("Delta_* needs nonnegative integer letter weights");
        std::int64_t n = static_cast<std::int64_t>(numerator(s));
        for (std::int64_t k = 0; k <= n; ++k) {
            std::optional<Letter> a = k == 0 ? std::nullopt : std::optional<Letter>(Letter::weight(Scalar(k)));
            std::optional<Letter> b =
                k == n ? std::nullopt : std::optional<Letter>(Letter::weight(Scalar(n - k)));
            push(std::move(a), std::move(b));
        }
        return out;
    }
    const auto& n = l.degree_vector();
    for (auto v : n)
        if (v < 0) throw no_semigroup("Delta_* needs componentwise nonnegative degree vectors");
    DegreeVector k(n.size(), 0);
    for (;;) {
        DegreeVector rest(n.size());
        bool k_zero = true, rest_zero = true;
        for (std::size_t i = 0; i < n.size(); ++i) {
            rest[i] = n[i] - k[i];
            if (k[i] != 0) k_zero = false;
            if (rest[i] != 0) rest_zero = false;
        }
        push(k_zero ? std::nullopt : std::optional<Letter>(Letter::degree(k)),
             rest_zero ? std::nullopt : std::optional<Letter>(Letter::degree(std::move(rest))));
        std::size_t p = 0;
        while (p < n.size() && k[p] == n[p]) k[p++] = 0;
        if (p == n.size()) break;
        ++k[p];
    }
    return out;
}

/// Delta_*(w): product over letters of their decompositions.
template <class F>
void delta_star_splittings(const Alphabet& alpha, const Word& w, F&& f) {
    std::vector<std::vector<std::pair<std::optional<Letter>, std::optional<Letter>>>> per;
    per.reserve(static_cast<std::size_t>(w.length()));
    for (const auto& l : w.letters) per.push_back(star_decompositions(alpha, l));
    std::vector<std::size_t> idx(per.size(), 0);
    for (;;) {
        std::vector<Letter> left, right;
        for (std::size_t i = 0; i < per.size(); ++i) {
            const auto& [a, b] = per[i][idx[i]];
            if (a) left.push_back(*a);
            if (b) right.push_back(*b);
        }
        f(Word(std::move(left)), Word(std::move(right)));
        std::size_t p = 0;
        while (p < per.size() && idx[p] + 1 == per[p].size()) idx[p++] = 0;
        if (p == per.size()) break;
        ++idx[p];
    }
}

inline bool has_repeated_letter(const Word& w) {
    for (int i = 0; i < w.length(); ++i)
        for (int j = i + 1; j < w.length(); ++j)
            if (w[i] == w[j]) return true;
    return false;
}

}  // namespace detail

/// Coproduct of the series sum_w M^w w, truncated at total tensor length L.
/// With distinct_letters_only, the series is restricted to its multilinear
/// part (words without repeated letters); this is the natural domain of
/// closed forms with poles at repeated letters, such as T.
inline TensorElement coproduct_delta(const Mould& m, int maxlen, bool distinct_letters_only = false) {
    TensorElement t;
    t.max_total_len = maxlen;
    for (const auto& w : words_up_to(m.alphabet().letters, maxlen)) {
        if (distinct_letters_only && detail::has_repeated_letter(w)) continue;
        Scalar c = m(w);
        if (c == 0) continue;
        detail::delta_splittings(w, [&](Word a, Word b) { t.add(a, b, c); });
    }
    return t;
}

inline TensorElement coproduct_delta_star(const Mould& m, int maxlen, bool distinct_letters_only = false) {
    if (!m.alphabet().has_semigroup()) throw no_semigroup("Delta_* needs a semigroup alphabet");
    TensorElement t;
    t.max_total_len = maxlen;
    for (const auto& w : words_up_to(m.alphabet().letters, maxlen)) {
        if (distinct_letters_only && detail::has_repeated_letter(w)) continue;
        Scalar c = m(w);
        if (c == 0) continue;
        detail::delta_star_splittings(m.alphabet(), w, [&](Word a, Word b) { t.add(a, b, c); });
    }
    return t;
}

inline TensorElement apply_coproduct(const Mould& m, int maxlen, Coproduct cp, bool distinct_letters_only = false) {
    return cp == Coproduct::delta ? coproduct_delta(m, maxlen, distinct_letters_only)
                                  : coproduct_delta_star(m, maxlen, distinct_letters_only);
}

/// Delta(P) - P (x) 1 - 1 (x) P, truncated. Zero iff the truncated series is
/// primitive, which happens iff M is alternal (resp. alternel under Delta_*).
inline TensorElement primitive_residual(const Mould& m, int maxlen, Coproduct cp = Coproduct::delta,
                                         bool distinct_letters_only = false) {
    TensorElement t = apply_coproduct(m, maxlen, cp, distinct_letters_only);
    for (const auto& w : words_up_to(m.alphabet().letters, maxlen)) {
        if (distinct_letters_only && detail::has_repeated_letter(w)) continue;
        Scalar c = m(w);
        if (c == 0) continue;
        t.add(w, Word::empty(), -c);
        t.add(Word::empty(), w, -c);
    }
    return t;
}

/// Words over the letters whose total integer additive weight is <= maxweight.
/// Requires every letter to have positive integer additive weight.
inline std::vector<Word> words_up_to_intweight(const Alphabet& alpha, int maxweight) {
    std::vector<Word> out;
    out.push_back(Word::empty());
    std::function<void(const Word&, int)> rec = [&](const Word& w, int budget) {
        for (const auto& l : alpha.letters) {
            Scalar lw = alpha.additive_weight(l);
            if (!is_integer(lw) || lw <= 0) throw no_semigroup("weight-graded enumeration needs positive integer weights");
            auto k = static_cast<int>(numerator(lw));
            if (k > budget) continue;
            Word wl = w + Word::single(l);
            out.push_back(wl);
            rec(wl, budget - k);
        }
    };
    rec(Word::empty(), maxweight);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Weight-graded Delta_* residuals: Delta_* preserves the total integer
/// weight, so enumerating the series by weight makes every coefficient of
/// the truncated tensor complete -- the right notion for rule moulds with
/// full support (Se, say), whose contracted letters escape any finite
/// letter set when grading by length.
inline TensorElement primitive_residual_by_weight(const Mould& m, int maxweight) {
    TensorElement t;
    t.max_total_len = 2 * maxweight;  // lengths never exceed total weight
    auto words = words_up_to_intweight(m.alphabet(), maxweight);
    for (const auto& w : words) {
        Scalar c = m(w);
        if (c == 0) continue;
        detail::delta_star_splittings(m.alphabet(), w, [&](Word a, Word b) { t.add(a, b, c); });
        t.add(w, Word::empty(), -c);
        t.add(Word::empty(), w, -c);
    }
    return t;
}

inline TensorElement grouplike_residual_by_weight(const Mould& m, int maxweight) {
    TensorElement t;
    t.max_total_len = 2 * maxweight;
    auto words = words_up_to_intweight(m.alphabet(), maxweight);
    for (const auto& w : words) {
        Scalar c = m(w);
        if (c == 0) continue;
        detail::delta_star_splittings(m.alphabet(), w, [&](Word a, Word b) { t.add(a, b, c); });
    }
    for (const auto& a : words) {
        Scalar ca = m(a);
        if (ca == 0) continue;
        for (const auto& b : words) {
            if (word_weight(m.alphabet(), a) + word_weight(m.alphabet(), b) > maxweight) continue;
            Scalar cb = m(b);
            if (cb == 0) continue;
            t.add(a, b, -ca * cb);
        }
    }
    return t;
}

/// Delta(P) - P (x) P, truncated. Zero iff the truncated series is
/// group-like, which happens iff M is symetral (resp. symetrel under
/// Delta_*).
inline TensorElement grouplike_residual(const Mould& m, int maxlen, Coproduct cp = Coproduct::delta,
                                         bool distinct_letters_only = false) {
    TensorElement t = apply_coproduct(m, maxlen, cp, distinct_letters_only);
    auto words = words_up_to(m.alphabet().letters, maxlen);
    for (const auto& a : words) {
        if (distinct_letters_only && detail::has_repeated_letter(a)) continue;
        Scalar ca = m(a);
        if (ca == 0) continue;
        for (const auto& b : words) {
            if (a.length() + b.length() > maxlen) continue;
            if (distinct_letters_only && detail::has_repeated_letter(b)) continue;
            Scalar cb = m(b);
            if (cb == 0) continue;
            t.add(a, b, -ca * cb);
        }
    }
    return t;
}

}  // namespace moulcalc
