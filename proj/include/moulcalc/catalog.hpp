#pragma once

#include <string>
#include <vector>

#include "moulcalc/ilsym.hpp"
#include "moulcalc/mould_ops.hpp"
#include "moulcalc/symmetry.hpp"

namespace moulcalc {
namespace catalog {

/// Catalog metadata: how a named mould is built, the symmetry it is declared
/// to satisfy, and where its closed form has poles.
struct NamedMould {
    std::string name;
    std::string recipe;
    SymmetryKind declared;
    std::string poles;
    std::string alphabet_note;
};

inline const std::vector<NamedMould>& entries() {
    static const std::vector<NamedMould> all = {
        {"one", "1 on the empty word, 0 elsewhere; unit of x", SymmetryKind::symetral, "none", "any"},
        {"I", "1 on length-1 words, 0 elsewhere; unit of o", SymmetryKind::alternal, "none", "any"},
        {"Exp", "1/r! on words of length r", SymmetryKind::symetral, "none", "any"},
        {"T", "product of 1/(omega_{i+1} - omega_i), 0 on lengths 0 and 1", SymmetryKind::alternal,
         "equal adjacent letters", "additive weights"},
        {"J", "(-1)^{r+1}/r, 0 on the empty word", SymmetryKind::alternel, "none", "any semigroup"},
        {"S", "(-1)^r / product of prefix sums", SymmetryKind::symetral, "vanishing prefix sum",
         "additive weights"},
        {"Na", "1 / product of prefix sums (S without the sign)", SymmetryKind::symetral,
         "vanishing prefix sum (resonance)", "additive weights"},
        {"Se", "e^{||w||} / product of (e^{-prefix sum} - 1)", SymmetryKind::symetrel,
         "prefix sum with e^p = 1", "multiplicative weights u = e^omega"},
        {"Ne", "multiplicative inverse of Ne_inv; closed form e^{-||w||} / product of (e^{-prefix} - 1)",
         SymmetryKind::symetrel, "prefix sum with e^p = 1 (resonance)", "multiplicative weights"},
        {"Ne_inv", "1 / product of (e^{suffix sum} - 1)", SymmetryKind::symetrel,
         "suffix sum with e^s = 1 (resonance)", "multiplicative weights"},
        {"Sam", "exp(Jl) x nabla exp(-Jl) + exp(Jl) x I x exp(-Jl), Jl the 1/omega mould",
         SymmetryKind::alternal, "none (zero weights handled by cases)", "additive weights"},
        {"Tram", "Sam composed with itself l(w) times (stabilized)", SymmetryKind::alternal, "none",
         "additive weights"},
        {"Sig", "generating series of Se in the letter variables, truncated", SymmetryKind::symetril,
         "q-resonant partial sums", "letters are the v variables; needs parameter q"},
    };
    return all;
}

inline const NamedMould* find(const std::string& name) {
    for (const auto& e : entries())
        if (e.name == name) return &e;
    return nullptr;
}

namespace detail {

inline Scalar prefix_sum_product(const Alphabet& alpha, const Word& w, bool with_sign) {
    Scalar denom(1);
    Scalar run(0);
    for (const auto& l : w.letters) {
        run += alpha.additive_weight(l);
        if (run == 0) throw pole_at_word(w.str(), "vanishing partial sum");
        denom *= run;
    }
    Scalar v = Scalar(1) / denom;
    if (with_sign && w.length() % 2 == 1) v = -v;
    return v;
}

}  // namespace detail

/// T: 0 on lengths 0 and 1, otherwise the product of the inverse differences
/// of consecutive letters.
inline Mould t_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.length() <= 1) return Scalar(0);
        Scalar v(1);
        for (int i = 0; i + 1 < w.length(); ++i) {
            Scalar d = a.additive_weight(w[i + 1]) - a.additive_weight(w[i]);
            if (d == 0) throw pole_at_word(w.str(), "equal adjacent letters");
            v /= d;
        }
        return v;
    });
}

/// J: (-1)^{r+1} / r.
inline Mould j_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet&, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(0);
        Scalar v = Scalar(1) / w.length();
        return w.length() % 2 == 0 ? -v : v;
    });
}

/// S: (-1)^r / (omega_1 (omega_1 + omega_2) ... (omega_1 + ... + omega_r)).
inline Mould s_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(1);
        return detail::prefix_sum_product(a, w, true);
    });
}

/// Na: the linearization mould, S without the alternating sign.
inline Mould na_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(1);
        return detail::prefix_sum_product(a, w, false);
    });
}

/// Exp: 1/r!.
inline Mould exp_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet&, const Word& w) -> Scalar { return Scalar(1) / factorial(w.length()); });
}

/// Se: e^{||w||} / prod_i (e^{-(omega_1+...+omega_i)} - 1), with e^omega
/// realized as the multiplicative letter weight.
inline Mould se_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(1);
        Scalar num(1), denom(1), run(1);
        for (const auto& l : w.letters) {
            Scalar u = a.multiplicative_weight(l);
            if (u == 0) throw pole_at_word(w.str(), "letter with zero multiplicative weight");
            num *= u;
            run *= u;
            if (run == 1) throw pole_at_word(w.str(), "resonant partial sum (e^p = 1)");
            denom *= Scalar(1) / run - 1;
        }
        return num / denom;
    });
}

/// Ne_inv: 1 / prod_i (e^{omega_i + ... + omega_r} - 1).
inline Mould ne_inv_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(1);
        Scalar denom(1), run(1);
        for (int i = w.length() - 1; i >= 0; --i) {
            Scalar u = a.multiplicative_weight(w[i]);
            if (u == 0) throw pole_at_word(w.str(), "letter with zero multiplicative weight");
            run *= u;
            if (run == 1) throw pole_at_word(w.str(), "resonant suffix sum (e^s = 1)");
            denom *= run - 1;
        }
        return Scalar(1) / denom;
    });
}

/// Ne: the multiplicative inverse of Ne_inv. Closed form
/// e^{-||w||} / prod_i (e^{-(omega_1+...+omega_i)} - 1); the sign of the
/// exponent in the numerator is fixed by Ne x Ne_inv = 1, which the tests
/// verify against the recursion-built inverse.
inline Mould ne_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(1);
        Scalar num(1), denom(1), run(1);
        for (const auto& l : w.letters) {
            Scalar u = a.multiplicative_weight(l);
            if (u == 0) throw pole_at_word(w.str(), "letter with zero multiplicative weight");
            num *= u;
            run *= u;
            if (run == 1) throw pole_at_word(w.str(), "resonant partial sum (e^p = 1)");
            denom *= Scalar(1) / run - 1;
        }
        return Scalar(1) / (num * denom);
    });
}

/// The single-letter mould 1/omega (0 on zero-weight letters and on every
/// word of length != 1); the exponent of the classical simplification step.
inline Mould jlin_mould(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        if (w.length() != 1) return Scalar(0);
        Scalar omega = a.additive_weight(w[0]);
        if (omega == 0) return Scalar(0);
        return Scalar(1) / omega;
    });
}

/// Sam built from its defining mould equation
///   Sam = exp(Jl) x nabla exp(-Jl) + exp(Jl) x I x exp(-Jl).
inline Mould sam_mould(const Alphabet& alpha) {
    Mould jl = jlin_mould(alpha);
    Mould ejl = mexp(jl);
    Mould emjl = mexp(scalar_mul(Scalar(-1), jl));
    Mould lhs = mul(ejl, nabla(emjl));
    Mould rhs = mul(ejl, mul(i_mould(alpha), emjl));
    return add(lhs, rhs);
}

/// Sam's closed form, used as a cross-check of the equation-built mould:
///  - empty word: 0; single letter: 1 if omega = 0 else 0;
///  - all omega_i nonzero:
///      (1/(omega_1...omega_r)) sum_k (-1)^{r-k}
///        (omega_k (r-k) - omega_{k+1} - ... - omega_r) / ((k-1)! (r-k+1)!)
///  - exactly one omega_i zero:
///      (-1)^{r-i} / ((i-1)! (r-i)! prod_{j != i} omega_j)
///  - two or more zeros: 0.
inline Mould sam_closed_form(const Alphabet& alpha) {
    return Mould(alpha, [](const Alphabet& a, const Word& w) -> Scalar {
        const int r = w.length();
        if (r == 0) return Scalar(0);
        std::vector<Scalar> omega;
        omega.reserve(static_cast<std::size_t>(r));
        int zeros = 0, zero_pos = -1;
        for (int i = 0; i < r; ++i) {
            omega.push_back(a.additive_weight(w[i]));
            if (omega.back() == 0) {
                ++zeros;
                zero_pos = i;
            }
        }
        if (r == 1) return Scalar(zeros == 1 ? 1 : 0);
        if (zeros >= 2) return Scalar(0);
        if (zeros == 1) {
            const int i = zero_pos + 1;  // 1-based
            Scalar denom = factorial(i - 1) * factorial(r - i);
            for (int j = 0; j < r; ++j)
                if (j != zero_pos) denom *= omega[static_cast<std::size_t>(j)];
            Scalar v = Scalar(1) / denom;
            return (r - i) % 2 == 0 ? v : -v;
        }
        Scalar sum(0);
        for (int k = 1; k <= r; ++k) {
            Scalar tail(0);
            for (int j = k + 1; j <= r; ++j) tail += omega[static_cast<std::size_t>(j - 1)];
            Scalar numer = omega[static_cast<std::size_t>(k - 1)] * (r - k) - tail;
            Scalar term = numer / (factorial(k - 1) * factorial(r - k + 1));
            sum += (r - k) % 2 == 0 ? term : -term;
        }
        Scalar prod(1);
        for (const auto& o : omega) prod *= o;
        return sum / prod;
    });
}

/// Tram: the pruned prenormal-form mould, Tram^w = (Sam o ... o Sam)^w with
/// l(w) composition factors. Iterates of Sam stabilize on each length, so
/// the table is built once per length stratum.
inline Mould tram_mould(const Alphabet& alpha) {
    struct Builder {
        Mould sam;
        std::vector<Mould> iterates;  // iterates[k] = Sam^{o (k+1)}
        Mould& iterate(int k) {
            while (static_cast<int>(iterates.size()) < k + 1)
                iterates.push_back(compose(iterates.back(), sam));
            return iterates[static_cast<std::size_t>(k)];
        }
    };
    auto b = std::make_shared<Builder>();
    b->sam = sam_mould(alpha);
    b->iterates.push_back(b->sam);
    return Mould(alpha, [b](const Alphabet&, const Word& w) -> Scalar {
        if (w.is_empty()) return Scalar(0);
        return b->iterate(w.length() - 1)(w);
    });
}

// ---------------------------------------------------------------------------
// Sig: the generating series of Se

/// Se evaluated on a word of positive integer indices (s_1, ..., s_r) in the
/// q-parameter realization e^{s} = q^s.
inline Scalar se_at_integers(const Scalar& q, const std::vector<int>& s) {
    Scalar num(1), denom(1), run(1);
    for (int si : s) {
        Scalar u = scalar_pow(q, si);
        num *= u;
        run *= u;
        if (run == 1) throw pole_at_word("(integer word)", "q-resonant partial sum");
        denom *= Scalar(1) / run - 1;
    }
    return num / denom;
}

/// Sig^{v_1,...,v_r} = sum over 1 <= s_i <= cap of Se^{s_1,...,s_r}
/// v_1^{s_1 - 1} ... v_r^{s_r - 1}, as a rule applicable to polynomial or
/// rational letters. Truncation at the cap is exact on coefficients of total
/// degree <= cap - r.
inline PolyMouldRule sig_rule(const Scalar& q, int cap) {
    return [q, cap](const std::vector<Poly>& args) -> Poly {
        const int r = static_cast<int>(args.size());
        const int nv = args.empty() ? 0 : args[0].nvars();
        if (r == 0) return Poly::constant(nv, Scalar(1));
        // power tables args[i]^{e}, e <= cap-1
        std::vector<std::vector<Poly>> pw(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
            pw[static_cast<std::size_t>(i)].push_back(Poly::constant(nv, Scalar(1)));
            for (int e = 1; e < cap; ++e)
                pw[static_cast<std::size_t>(i)].push_back(pw[static_cast<std::size_t>(i)].back() *
                                                          args[static_cast<std::size_t>(i)]);
        }
        Poly acc(nv);
        std::vector<int> s(static_cast<std::size_t>(r), 1);
        for (;;) {
            Poly term = Poly::constant(nv, se_at_integers(q, s));
            for (int i = 0; i < r; ++i) term = term * pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(s[static_cast<std::size_t>(i)] - 1)];
            acc += term;
            int p = r - 1;
            while (p >= 0 && s[static_cast<std::size_t>(p)] == cap) s[static_cast<std::size_t>(p--)] = 1;
            if (p < 0) break;
            ++s[static_cast<std::size_t>(p)];
        }
        return acc;
    };
}

/// Sig as a scalar mould over abstract letters whose weights are the
/// v-values.
inline Mould sig_mould(const Alphabet& alpha, const Scalar& q, int cap = 6) {
    auto rule = sig_rule(q, cap);
    return Mould(alpha, [rule](const Alphabet&, const Word& w) -> Scalar {
        std::vector<Poly> args;
        args.reserve(static_cast<std::size_t>(w.length()));
        for (const auto& l : w.letters) {
            if (l.is_degree()) throw mould_error("Sig letters are the v variables: rational weights, not degrees");
            args.push_back(Poly::constant(0, l.abstract_weight()));
        }
        return rule(args).coeff(Monomial{});
    });
}

/// Options for make(); only Sig consumes them.
struct Options {
    Scalar sig_q = Scalar(2);
    int sig_cap = 6;
};

/// Build a catalog mould by name over the given alphabet. Throws
/// mould_error for unknown names.
inline Mould make(const std::string& name, const Alphabet& alpha, const Options& opt = {}) {
    if (name == "one") return one_mould(alpha);
    if (name == "I") return i_mould(alpha);
    if (name == "Exp") return exp_mould(alpha);
    if (name == "T") return t_mould(alpha);
    if (name == "J") return j_mould(alpha);
    if (name == "S") return s_mould(alpha);
    if (name == "Na") return na_mould(alpha);
    if (name == "Se") return se_mould(alpha);
    if (name == "Ne") return ne_mould(alpha);
    if (name == "Ne_inv") return ne_inv_mould(alpha);
    if (name == "Sam") return sam_mould(alpha);
    if (name == "Tram") return tram_mould(alpha);
    if (name == "Sig") return sig_mould(alpha, opt.sig_q, opt.sig_cap);
    throw mould_error("unknown catalog mould '" + name + "'");
}

}  // namespace catalog
}  // namespace moulcalc
