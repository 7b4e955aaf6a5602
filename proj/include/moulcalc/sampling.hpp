#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "moulcalc/mould_ops.hpp"

namespace moulcalc {

/// Deterministic RNG for randomized exact checks. Same seed, same samples.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    /// Uniform nonzero integer from the 32-bit box [-2^31+1, 2^31-1].
    Scalar big_int() {
        std::uniform_int_distribution<std::int64_t> d(-((std::int64_t(1) << 31) - 1), (std::int64_t(1) << 31) - 1);
        for (;;) {
            std::int64_t v = d(eng_);
            if (v != 0) return Scalar(v);
        }
    }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        std::uniform_int_distribution<std::int64_t> d(lo, hi);
        return d(eng_);
    }

    /// Small nonzero rational, handy for table entries.
    Scalar small_rational() {
        Scalar num(int_in(-9, 9));
        while (num == 0) num = Scalar(int_in(-9, 9));
        return num / Scalar(int_in(1, 9));
    }

    Scalar small_rational_or_zero() { return Scalar(int_in(-9, 9)) / Scalar(int_in(1, 9)); }

private:
    std::mt19937_64 eng_;
};

/// k distinct random rational letters for an additive abstract alphabet.
inline Alphabet sample_additive_alphabet(int k, Rng& rng) {
    std::set<Scalar> seen;
    std::vector<Letter> ls;
    while (static_cast<int>(ls.size()) < k) {
        Scalar v = rng.big_int();
        if (seen.insert(v).second) ls.push_back(Letter::weight(v));
    }
    return Alphabet::abstract_additive(std::move(ls));
}

/// k distinct random letters u = e^omega for a multiplicative alphabet;
/// u != 0 and u != 1 so no letter is trivially resonant.
inline Alphabet sample_multiplicative_alphabet(int k, Rng& rng) {
    std::set<Scalar> seen;
    std::vector<Letter> ls;
    while (static_cast<int>(ls.size()) < k) {
        Scalar v = rng.big_int();
        if (v == 1 || v == -1) continue;
        if (seen.insert(v).second) ls.push_back(Letter::weight(v));
    }
    return Alphabet::abstract_multiplicative(std::move(ls));
}

/// Integer-weighted additive alphabet {1, ..., k} whose sum closure up to
/// total length maxlen is {1, ..., k*maxlen}; tabulated moulds built over the
/// closure stay defined under contracting shuffles and composition.
inline Alphabet integer_alphabet(int k, int closure_maxlen = 1) {
    std::vector<Letter> ls;
    for (int i = 1; i <= k * closure_maxlen; ++i) ls.push_back(Letter::weight(Scalar(i)));
    Alphabet a = Alphabet::abstract_additive(std::move(ls));
    return a;
}

/// Wrap a finite table as a total mould extended by zero off the table.
/// Extension by zero preserves the shuffle and quasi-shuffle symmetries, and
/// keeps contracted or composed words (whose letters are sums outside the
/// generating set) well defined.
inline Mould table_with_zero_default(const Alphabet& alpha, Mould::Table t) {
    auto shared = std::make_shared<Mould::Table>(std::move(t));
    return Mould(alpha, [shared](const Alphabet&, const Word& w) {
        auto it = shared->find(w);
        return it == shared->end() ? Scalar(0) : it->second;
    });
}

/// Random mould tabulated on every word of length <= maxlen over the
/// alphabet's letters, zero elsewhere.
inline Mould random_table_mould(const Alphabet& alpha, int maxlen, Rng& rng, bool zero_on_empty = false,
                                bool unit_on_empty = false) {
    Mould::Table t;
    for (const auto& w : words_up_to(alpha.letters, maxlen)) t[w] = rng.small_rational_or_zero();
    if (zero_on_empty) t[Word::empty()] = Scalar(0);
    if (unit_on_empty) t[Word::empty()] = Scalar(1);
    return table_with_zero_default(alpha, std::move(t));
}

namespace detail {

/// Expansion of the left-nested bracket [[...[l1,l2],...],lk] as a word
/// combination.
inline std::map<Word, Scalar> bracket_expansion(const std::vector<Letter>& ls) {
    std::map<Word, Scalar> acc;
    acc[Word::single(ls[0])] = Scalar(1);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::map<Word, Scalar> next;
        Word x = Word::single(ls[i]);
        for (const auto& [w, c] : acc) {
            next[w + x] += c;
            next[x + w] -= c;
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace detail

/// Random alternal mould: a random combination of left-nested Lie brackets of
/// letters, read off as word coefficients. Primitive by construction, hence
/// alternal; extended by zero off the generated words.
inline Mould random_alternal(const Alphabet& alpha, int maxlen, Rng& rng, int terms_per_length = 3) {
    Mould::Table t;
    const auto k = static_cast<std::int64_t>(alpha.letters.size());
    for (int r = 1; r <= maxlen; ++r)
        for (int trial = 0; trial < terms_per_length; ++trial) {
            std::vector<Letter> ls;
            for (int i = 0; i < r; ++i) ls.push_back(alpha.letters[static_cast<std::size_t>(rng.int_in(0, k - 1))]);
            Scalar c = rng.small_rational();
            for (const auto& [w, coef] : detail::bracket_expansion(ls)) t[w] += c * coef;
        }
    t[Word::empty()] = Scalar(0);
    return table_with_zero_default(alpha, std::move(t));
}

/// Random symetral mould: exp of a random alternal one.
inline Mould random_symetral(const Alphabet& alpha, int maxlen, Rng& rng) {
    return mexp(random_alternal(alpha, maxlen, rng));
}

/// Random alternel mould: A o Exp0^{o(-1)} for random alternal A, where Exp0
/// is the exponential mould with its empty-word value dropped. The duality
/// theorem transports alternality across the composition.
inline Mould random_alternel(const Alphabet& alpha, int maxlen, Rng& rng) {
    if (!alpha.has_semigroup()) throw no_semigroup("alternel sampling needs a semigroup alphabet");
    Mould exp0 = constant_rule_mould(alpha, [](const Word& w) {
        return w.is_empty() ? Scalar(0) : Scalar(1) / factorial(w.length());
    });
    Mould a = random_alternal(alpha, maxlen, rng);
    return compose(a, comp_inverse(exp0));
}

/// Random symetrel mould: exp of a random alternel one.
inline Mould random_symetrel(const Alphabet& alpha, int maxlen, Rng& rng) {
    return mexp(random_alternel(alpha, maxlen, rng));
}

/// Randomized equality of rule moulds over abstract additive letters:
/// compare on every word of length <= maxlen over `trials` freshly sampled
/// alphabets from the 32-bit box, skipping pole configurations (up to 100
/// resamples per trial). Exact rational agreement at all samples is
/// polynomial identity testing with negligible collision probability.
template <class MakeLhs, class MakeRhs>
bool equal_sampled(MakeLhs&& lhs_of, MakeRhs&& rhs_of, int letters, int maxlen, Rng& rng, int trials = 8) {
    for (int t = 0; t < trials; ++t) {
        for (int retry = 0;; ++retry) {
            if (retry > 100) throw pole_at_word("(sampling)", "pole retry cap exhausted");
            Alphabet a = sample_additive_alphabet(letters, rng);
            try {
                Mould lhs = lhs_of(a);
                Mould rhs = rhs_of(a);
                if (!equal_up_to(lhs, rhs, maxlen)) return false;
                break;
            } catch (const pole_at_word&) {
            }
        }
    }
    return true;
}

}  // namespace moulcalc
