#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "moulcalc/poly.hpp"
#include "moulcalc/sampling.hpp"
#include "moulcalc/symmetry.hpp"

namespace moulcalc {

/// One slot of a shi word: either a single original variable, or a star pair
/// (one variable from each factor) to be resolved by the difference-quotient
/// rule M^{..., x*y, ...} = (M^{..., x, ...} - M^{..., y, ...}) / (x - y).
struct ShiSlot {
    int left;   // variable index, or -1
    int right;  // variable index, or -1
    bool is_star() const { return left >= 0 && right >= 0; }
    int plain() const { return left >= 0 ? left : right; }
};

using ShiWord = std::vector<ShiSlot>;

/// shi(x, y): contracting-shuffle patterns of variable indices 0..n-1 and
/// n..n+m-1 where contraction produces a star slot instead of a sum.
inline std::vector<ShiWord> shi_words(int n, int m) {
    std::vector<ShiWord> out;
    ShiWord acc;
    std::function<void(int, int)> rec = [&](int i, int j) {
        if (i == n && j == m) {
            out.push_back(acc);
            return;
        }
        if (i < n) {
            acc.push_back(ShiSlot{i, -1});
            rec(i + 1, j);
            acc.pop_back();
        }
        if (j < m) {
            acc.push_back(ShiSlot{-1, n + j});
            rec(i, j + 1);
            acc.pop_back();
        }
        if (i < n && j < m) {
            acc.push_back(ShiSlot{i, n + j});
            rec(i + 1, j + 1);
            acc.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

/// A mould rule taking polynomial letters: a word of variables evaluates to
/// a polynomial in those variables, so the same rule serves symbolic checks
/// and rational-sample checks (samples are degree-0 polynomials).
using PolyMouldRule = std::function<Poly(const std::vector<Poly>&)>;

namespace detail {

/// Symbolic star resolution. Slot k carries distinct variables x_i, x_j, and
/// M^{...x_j...} is M^{...x_i...} with x_i renamed to x_j, so the quotient is
/// the exact telescoping divided difference; no division happens.
inline Poly eval_shi_symbolic(const PolyMouldRule& m, const ShiWord& word, const std::vector<Poly>& vars,
                              std::size_t from = 0) {
    for (std::size_t k = from; k < word.size(); ++k) {
        if (!word[k].is_star()) continue;
        ShiWord a(word);
        a[k] = ShiSlot{word[k].left, -1};
        Poly pa = eval_shi_symbolic(m, a, vars, k + 1);
        return divided_difference(pa, word[k].left, word[k].right);
    }
    std::vector<Poly> args;
    args.reserve(word.size());
    for (const auto& s : word) args.push_back(vars[static_cast<std::size_t>(s.plain())]);
    return m(args);
}

/// Star resolution at rational sample points; collisions x_i = y_j raise
/// sample_collision for the caller to resample.
inline Scalar eval_shi_sampled(const PolyMouldRule& m, const ShiWord& word, const std::vector<Scalar>& pts,
                               int nvars) {
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (!word[k].is_star()) continue;
        ShiWord a(word), b(word);
        a[k] = ShiSlot{word[k].left, -1};
        b[k] = ShiSlot{-1, word[k].right};
        Scalar va = eval_shi_sampled(m, a, pts, nvars);
        Scalar vb = eval_shi_sampled(m, b, pts, nvars);
        Scalar dx = pts[static_cast<std::size_t>(word[k].left)] - pts[static_cast<std::size_t>(word[k].right)];
        if (dx == 0) throw sample_collision();
        return (va - vb) / dx;
    }
    std::vector<Poly> args;
    args.reserve(word.size());
    for (const auto& s : word) args.push_back(Poly::constant(nvars, pts[static_cast<std::size_t>(s.plain())]));
    Poly v = m(args);
    return v.coeff(Monomial(static_cast<std::size_t>(nvars), 0));
}

}  // namespace detail

/// Report of an il-type check.
struct IlReport {
    SymmetryKind kind;
    int max_len = 0;
    bool ok = true;
    std::string counterexample;

    explicit operator bool() const { return ok; }
};

/// Symbolic alternil/symetril check of a rule mould over abstract variable
/// letters: for every factor pair with total length <= maxlen, the shi sum
/// equals 0 (alternil) or M^x M^y (symetril) as a polynomial identity.
/// When the rule is a truncated generating series, pass `safe_degree` >= 0
/// to compare coefficients only up to that total degree; beyond it the cap
/// of the series contaminates coefficients.
inline IlReport check_il(const PolyMouldRule& m, SymmetryKind kind, int maxlen, int safe_degree = -1) {
    IlReport rep;
    rep.kind = kind;
    rep.max_len = maxlen;
    const bool product_rhs = kind == SymmetryKind::symetril;
    for (int n = 1; n < maxlen; ++n)
        for (int mm = 1; n + mm <= maxlen; ++mm) {
            const int nv = n + mm;
            std::vector<Poly> vars;
            for (int i = 0; i < nv; ++i) vars.push_back(Poly::variable(nv, i));
            Poly lhs(nv);
            for (const auto& sw : shi_words(n, mm)) lhs += detail::eval_shi_symbolic(m, sw, vars);
            Poly rhs(nv);
            if (product_rhs) {
                std::vector<Poly> left(vars.begin(), vars.begin() + n);
                std::vector<Poly> right(vars.begin() + n, vars.end());
                rhs = m(left) * m(right);
            }
            Poly res = lhs - rhs;
            if (safe_degree >= 0) res = res.truncated(safe_degree);
            if (!res.is_zero()) {
                rep.ok = false;
                rep.counterexample = "factor lengths (" + std::to_string(n) + "," + std::to_string(mm) + ")";
                return rep;
            }
        }
    return rep;
}

/// Same check with the variables instantiated at `trials` random rational
/// points from the 32-bit box; poles and star collisions are resampled, up
/// to 100 retries per trial. Exact only when the rule itself is exact.
inline IlReport check_il_sampled(const PolyMouldRule& m, SymmetryKind kind, int maxlen, Rng& rng, int trials = 8) {
    IlReport rep;
    rep.kind = kind;
    rep.max_len = maxlen;
    const bool product_rhs = kind == SymmetryKind::symetril;
    for (int n = 1; n < maxlen; ++n)
        for (int mm = 1; n + mm <= maxlen; ++mm) {
            const int nv = n + mm;
            for (int trial = 0; trial < trials; ++trial) {
                for (int retries = 0;; ++retries) {
                    if (retries > 100) throw sample_collision("retry cap exhausted in il check");
                    std::vector<Scalar> pts;
                    for (int i = 0; i < nv; ++i) pts.push_back(rng.big_int());
                    try {
                        Scalar lhs(0);
                        for (const auto& sw : shi_words(n, mm)) lhs += detail::eval_shi_sampled(m, sw, pts, nv);
                        Scalar rhs(0);
                        if (product_rhs) {
                            std::vector<Poly> left, right;
                            for (int i = 0; i < n; ++i) left.push_back(Poly::constant(nv, pts[static_cast<std::size_t>(i)]));
                            for (int i = n; i < nv; ++i) right.push_back(Poly::constant(nv, pts[static_cast<std::size_t>(i)]));
                            rhs = (m(left) * m(right)).coeff(Monomial(static_cast<std::size_t>(nv), 0));
                        }
                        if (lhs != rhs) {
                            rep.ok = false;
                            rep.counterexample =
                                "factor lengths (" + std::to_string(n) + "," + std::to_string(mm) + ")";
                            return rep;
                        }
                        break;
                    } catch (const sample_collision&) {
                    } catch (const pole_at_word&) {
                    }
                }
            }
        }
    return rep;
}

/// Guard for the left-to-right convention: resolve the stars of every shi
/// word of the given factor lengths in all possible orders and confirm the
/// results agree symbolically.
inline bool star_order_independent(const PolyMouldRule& m, int n, int mm) {
    const int nv = n + mm;
    std::vector<Poly> vars;
    for (int i = 0; i < nv; ++i) vars.push_back(Poly::variable(nv, i));
    for (const auto& sw : shi_words(n, mm)) {
        std::vector<std::size_t> stars;
        for (std::size_t k = 0; k < sw.size(); ++k)
            if (sw[k].is_star()) stars.push_back(k);
        if (stars.size() < 2) continue;
        Poly ref = detail::eval_shi_symbolic(m, sw, vars);
        std::vector<std::size_t> perm = stars;
        do {
            // resolve stars in the order given by perm
            std::function<Poly(ShiWord, std::size_t)> resolve = [&](ShiWord word, std::size_t step) -> Poly {
                if (step == perm.size()) return detail::eval_shi_symbolic(m, word, vars);
                std::size_t k = perm[step];
                if (!word[k].is_star()) return resolve(word, step + 1);
                ShiWord a(word);
                a[k] = ShiSlot{word[k].left, -1};
                Poly pa = resolve(a, step + 1);
                return divided_difference(pa, word[k].left, word[k].right);
            };
            if (resolve(sw, 0) != ref) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return true;
}

}  // namespace moulcalc
