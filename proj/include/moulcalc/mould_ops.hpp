#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "moulcalc/mould.hpp"

namespace moulcalc {

// ---------------------------------------------------------------------------
// Units

/// 1^bullet: unit of the mould product (1 on the empty word, 0 elsewhere).
inline Mould one_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet&, const Word& w) { return Scalar(w.is_empty() ? 1 : 0); });
}

/// I^bullet: unit of composition (1 on length-1 words, 0 elsewhere).
inline Mould i_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet&, const Word& w) { return Scalar(w.length() == 1 ? 1 : 0); });
}

inline Mould zero_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet&, const Word&) { return Scalar(0); });
}

inline Mould constant_rule_mould(const Alphabet& alpha, std::function<Scalar(const Word&)> f) {
    return Mould(alpha, [f = std::move(f)](const Alphabet&, const Word& w) { return f(w); });
}

namespace detail {

inline void require_compatible(const Mould& a, const Mould& b) {
    if (!a.alphabet().compatible(b.alphabet()))
        throw alphabet_mismatch("binary mould operation on incompatible alphabets");
}

inline int min_bound(const Mould& a, const Mould& b) { return std::min(a.bound(), b.bound()); }

/// Ordered factorizations of w into non-empty blocks; f is called with the
/// list of cut points 0 = c0 < c1 < ... < cs = r.
template <class F>
void for_each_block_factorization(int r, F&& f) {
    if (r == 0) return;
    const unsigned masks = 1u << (r - 1);
    std::vector<int> cuts;
    for (unsigned m = 0; m < masks; ++m) {
        cuts.clear();
        cuts.push_back(0);
        for (int i = 0; i < r - 1; ++i)
            if (m & (1u << i)) cuts.push_back(i + 1);
        cuts.push_back(r);
        f(cuts);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear structure

inline Mould add(const Mould& m, const Mould& n) {
    detail::require_compatible(m, n);
    return Mould(m.alphabet(), [m, n](const Alphabet&, const Word& w) { return m(w) + n(w); },
                 detail::min_bound(m, n));
}

inline Mould sub(const Mould& m, const Mould& n) {
    detail::require_compatible(m, n);
    return Mould(m.alphabet(), [m, n](const Alphabet&, const Word& w) { return m(w) - n(w); },
                 detail::min_bound(m, n));
}

inline Mould scalar_mul(const Scalar& c, const Mould& m) {
    return Mould(m.alphabet(), [c, m](const Alphabet&, const Word& w) { return c * m(w); }, m.bound());
}

// ---------------------------------------------------------------------------
// Product and multiplicative inverse

/// Mould product, Part III convention:
///   (M x N)^w = sum over splittings w = w1.w2 (empty factors included) of
///   M^{w1} N^{w2}.
inline Mould mul(const Mould& m, const Mould& n) {
    detail::require_compatible(m, n);
    return Mould(m.alphabet(),
                 [m, n](const Alphabet&, const Word& w) {
                     Scalar acc(0);
                     for (int i = 0; i <= w.length(); ++i) acc += m(w.prefix(i)) * n(w.suffix_from(i));
                     return acc;
                 },
                 detail::min_bound(m, n));
}

/// Two-sided inverse for x, built by the length recursion
///   M^{0} N^w = 1^w - sum_{w1.w2 = w, w1 nonempty} M^{w1} N^{w2}.
/// Requires M^{0} != 0.
inline Mould mul_inverse(const Mould& m) {
    if (m.empty_value() == 0) throw not_invertible();
    struct Rec {
        Mould m;
        Scalar inv0;
        mutable Mould::Table memo;
        Scalar operator()(const Word& w) const {
            if (w.is_empty()) return inv0;
            auto it = memo.find(w);
            if (it != memo.end()) return it->second;
            Scalar acc(0);
            for (int i = 1; i <= w.length(); ++i) acc += m(w.prefix(i)) * (*this)(w.suffix_from(i));
            Scalar v = -inv0 * acc;
            memo.emplace(w, v);
            return v;
        }
    };
    auto rec = std::make_shared<Rec>(Rec{m, Scalar(1) / m.empty_value(), {}});
    return Mould(m.alphabet(), [rec](const Alphabet&, const Word& w) { return (*rec)(w); }, m.bound());
}

// ---------------------------------------------------------------------------
// Composition

/// Mould composition:
///   (M o N)^w = sum over factorizations w = b1...bs into non-empty blocks of
///   M^{(||b1||,...,||bs||)} N^{b1} ... N^{bs},  (M o N)^{empty} = M^{empty}.
/// The sum ranges over non-empty blocks only, so N's empty-word value is
/// never read (Exp, with Exp^{empty} = 1, composes on the right unchanged).
inline Mould compose(const Mould& m, const Mould& n) {
    detail::require_compatible(m, n);
    if (!m.alphabet().has_semigroup()) throw no_semigroup("composition needs a semigroup alphabet");
    return Mould(m.alphabet(),
                 [m, n](const Alphabet& alpha, const Word& w) {
                     if (w.is_empty()) return m(Word::empty());
                     Scalar acc(0);
                     detail::for_each_block_factorization(w.length(), [&](const std::vector<int>& cuts) {
                         Scalar term(1);
                         std::vector<Letter> norms;
                         norms.reserve(cuts.size() - 1);
                         for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                             Word block = w.slice(cuts[k], cuts[k + 1]);
                             term *= n(block);
                             if (term == 0) break;
                             norms.push_back(norm(alpha, block));
                         }
                         if (term != 0) acc += m(Word(std::move(norms))) * term;
                     });
                     return acc;
                 },
                 detail::min_bound(m, n));
}

/// Inverse for composition of M with M^{empty} = 0 and M nonvanishing on
/// length-1 words, by the length recursion of the composition group lemma.
inline Mould comp_inverse(const Mould& m) {
    if (!m.alphabet().has_semigroup()) throw no_semigroup("composition needs a semigroup alphabet");
    if (m.empty_value() != 0) throw not_comp_invertible("composition inverse needs M^{empty} = 0");
    struct Rec {
        Mould m;
        mutable Mould::Table memo;
        Scalar operator()(const Alphabet& alpha, const Word& w) const {
            if (w.is_empty()) return Scalar(0);
            auto it = memo.find(w);
            if (it != memo.end()) return it->second;
            Scalar head = m(Word::single(norm(alpha, w)));
            if (head == 0)
                throw not_comp_invertible("composition inverse needs M nonzero on length-1 words");
            // I^w = M^{(||w||)} N^w + sum over factorizations into s >= 2 blocks.
            Scalar rest(0);
            detail::for_each_block_factorization(w.length(), [&](const std::vector<int>& cuts) {
                if (cuts.size() - 1 < 2) return;
                Scalar term(1);
                std::vector<Letter> norms;
                for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                    Word block = w.slice(cuts[k], cuts[k + 1]);
                    term *= (*this)(alpha, block);
                    if (term == 0) break;
                    norms.push_back(norm(alpha, block));
                }
                if (term != 0) rest += m(Word(std::move(norms))) * term;
            });
            Scalar iw(w.length() == 1 ? 1 : 0);
            Scalar v = (iw - rest) / head;
            memo.emplace(w, v);
            return v;
        }
    };
    auto rec = std::make_shared<Rec>(Rec{m, {}});
    return Mould(m.alphabet(), [rec](const Alphabet& alpha, const Word& w) { return (*rec)(alpha, w); }, m.bound());
}

// ---------------------------------------------------------------------------
// Exponential and logarithm for the product

/// exp(M) = sum_k M^{x k} / k!  for M with M^{empty} = 0. The grading by word
/// length makes the series finite on every word.
inline Mould mexp(const Mould& m) {
    if (m.empty_value() != 0) throw non_nilpotent("exp needs M^{empty} = 0");
    return Mould(m.alphabet(),
                 [m](const Alphabet&, const Word& w) {
                     if (w.is_empty()) return Scalar(1);
                     Scalar acc(0);
                     detail::for_each_block_factorization(w.length(), [&](const std::vector<int>& cuts) {
                         Scalar term(1);
                         for (std::size_t k = 0; k + 1 < cuts.size() && term != 0; ++k)
                             term *= m(w.slice(cuts[k], cuts[k + 1]));
                         acc += term / factorial(static_cast<int>(cuts.size()) - 1);
                     });
                     return acc;
                 },
                 m.bound());
}

inline int k_sign(int s) { return s % 2 == 1 ? 1 : -1; }

/// log(M) for M with M^{empty} = 1: the series log(1 + (M - 1)) in the mould
/// product. Inverse of mexp on each side up to the length bound.
inline Mould mlog(const Mould& m) {
    if (m.empty_value() != 1) throw non_nilpotent("log needs M^{empty} = 1");
    return Mould(m.alphabet(),
                 [m](const Alphabet&, const Word& w) {
                     if (w.is_empty()) return Scalar(0);
                     Scalar acc(0);
                     detail::for_each_block_factorization(w.length(), [&](const std::vector<int>& cuts) {
                         const int s = static_cast<int>(cuts.size()) - 1;
                         Scalar term(1);
                         for (int k = 0; k < s && term != 0; ++k) term *= m(w.slice(cuts[k], cuts[k + 1]));
                         acc += Scalar(k_sign(s)) * term / s;
                     });
                     return acc;
                 },
                 m.bound());
}

// ---------------------------------------------------------------------------
// Derivations D_lambda and automorphisms A_f

/// A word-indexed weight lambda_w. Additivity lambda_{uv} = lambda_u +
/// lambda_v makes D_lambda: M -> lambda_. M a derivation for x.
struct WeightMap {
    std::string name;
    std::function<Scalar(const Alphabet&, const Word&)> fn;

    Scalar operator()(const Alphabet& alpha, const Word& w) const { return fn(alpha, w); }

    /// Check additivity on every split of every word of length <= maxlen over
    /// the given letters.
    void validate_additive(const Alphabet& alpha, const std::vector<Letter>& letters, int maxlen) const {
        for (const auto& w : words_up_to(letters, maxlen))
            for (int i = 0; i <= w.length(); ++i)
                if (fn(alpha, w) != fn(alpha, w.prefix(i)) + fn(alpha, w.suffix_from(i)))
                    throw not_additive("weight map '" + name + "' is not additive at " + w.str());
    }
};

/// lang: lambda_w = l(w).
inline WeightMap lang_weight() {
    return WeightMap{"lang", [](const Alphabet&, const Word& w) { return Scalar(w.length()); }};
}

/// nabla: lambda_w = ||w|| in additive weights (omega_1 + ... + omega_r).
inline WeightMap nabla_weight() {
    return WeightMap{"nabla", [](const Alphabet& alpha, const Word& w) { return word_weight(alpha, w); }};
}

/// D_lambda M = lambda_. M pointwise. Additivity is validated on the
/// alphabet's generating letters up to the given length.
inline Mould derive_simple(const WeightMap& lambda, const Mould& m, int validate_len = 2) {
    if (validate_len > 0) lambda.validate_additive(m.alphabet(), m.alphabet().letters, validate_len);
    return Mould(m.alphabet(), [lambda, m](const Alphabet& alpha, const Word& w) { return lambda(alpha, w) * m(w); },
                 m.bound());
}

/// nabla M without revalidation (nabla is additive by construction).
inline Mould nabla(const Mould& m) {
    return Mould(m.alphabet(), [m](const Alphabet& alpha, const Word& w) { return word_weight(alpha, w) * m(w); },
                 m.bound());
}

inline Mould lang(const Mould& m) {
    return Mould(m.alphabet(), [m](const Alphabet&, const Word& w) { return Scalar(w.length()) * m(w); }, m.bound());
}

/// dar: (dar M)^w = sum over w = w1.w2.w3 with w2 non-empty of
///   M^{w1 . (||w2||) . w3} Dar^{w2}.
/// A derivation for x; alternal when Dar is alternal.
inline Mould dar(const Mould& darm, const Mould& m) {
    detail::require_compatible(darm, m);
    if (!m.alphabet().has_semigroup()) throw no_semigroup("dar needs a semigroup alphabet");
    return Mould(m.alphabet(),
                 [darm, m](const Alphabet& alpha, const Word& w) {
                     Scalar acc(0);
                     for (int i = 0; i < w.length(); ++i)
                         for (int j = i + 1; j <= w.length(); ++j) {
                             Word mid = w.slice(i, j);
                             Scalar dv = darm(mid);
                             if (dv == 0) continue;
                             Word key = w.prefix(i) + Word::single(norm(alpha, mid)) + w.suffix_from(j);
                             acc += m(key) * dv;
                         }
                     return acc;
                 },
                 detail::min_bound(darm, m));
}

/// A word-indexed factor f(w). When f is a morphism of the word monoid into
/// (K, x), A_f: M -> f(.) M is an algebra automorphism.
struct MorphismMap {
    std::string name;
    std::function<Scalar(const Alphabet&, const Word&)> fn;

    Scalar operator()(const Alphabet& alpha, const Word& w) const { return fn(alpha, w); }

    void validate_morphism(const Alphabet& alpha, const std::vector<Letter>& letters, int maxlen) const {
        for (const auto& w : words_up_to(letters, maxlen))
            for (int i = 0; i <= w.length(); ++i)
                if (fn(alpha, w) != fn(alpha, w.prefix(i)) * fn(alpha, w.suffix_from(i)))
                    throw not_morphism("map '" + name + "' is not multiplicative at " + w.str());
    }
};

/// e^nabla: f(w) = e^{||w||}, realized exactly as the product of the
/// multiplicative letter weights.
inline MorphismMap exp_nabla_morphism() {
    return MorphismMap{"e^nabla", [](const Alphabet& alpha, const Word& w) { return word_mult_weight(alpha, w); }};
}

inline Mould automorphism(const MorphismMap& f, const Mould& m, int validate_len = 2) {
    if (validate_len > 0) f.validate_morphism(m.alphabet(), m.alphabet().letters, validate_len);
    return Mould(m.alphabet(), [f, m](const Alphabet& alpha, const Word& w) { return f(alpha, w) * m(w); },
                 m.bound());
}

inline Mould exp_nabla(const Mould& m) {
    return Mould(m.alphabet(),
                 [m](const Alphabet& alpha, const Word& w) { return word_mult_weight(alpha, w) * m(w); }, m.bound());
}

/// The retrograde conjugate M^{ret w}. An anti-automorphism of the mould
/// product; it preserves every shuffle symmetry.
inline Mould retrograde_mould(const Mould& m) {
    return Mould(m.alphabet(), [m](const Alphabet&, const Word& w) { return m(retrograde(w)); }, m.bound());
}

// ---------------------------------------------------------------------------
// Equality up to a length bound

/// Compare two moulds on every word of length <= maxlen over the given
/// letters (defaults to the alphabet's generating letters).
inline bool equal_up_to(const Mould& m, const Mould& n, int maxlen, const std::vector<Letter>* letters = nullptr) {
    const auto& ls = letters ? *letters : m.alphabet().letters;
    for (const auto& w : words_up_to(ls, maxlen))
        if (m(w) != n(w)) return false;
    return true;
}

}  // namespace moulcalc
