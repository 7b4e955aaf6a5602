#pragma once

#include <map>
#include <vector>

#include "moulcalc/homop.hpp"
#include "moulcalc/mould_ops.hpp"

namespace moulcalc {

/// One polynomial term of a field or diffeo component:
/// coef * x^exponents in coordinate direction `direction`.
struct LocalTerm {
    Scalar coef;
    Monomial exponents;
    int direction = 0;
};

// ---------------------------------------------------------------------------
// Prepared vector fields

/// Local vector field in prepared form: diagonal linear part with spectrum
/// lambda plus homogeneous derivations D_n indexed by admissible degrees.
struct PreparedField {
    int nu = 0;
    std::vector<Scalar> lambda;
    std::map<DegreeVector, HomOp> parts;

    /// Alphabet of degree letters with the field's spectrum attached.
    Alphabet alphabet() const {
        std::vector<Letter> ls;
        for (const auto& [n, op] : parts) ls.push_back(Letter::degree(n));
        return Alphabet::degrees(nu, lambda, std::move(ls));
    }

    /// The weight alphabet omega(n) = n . lambda used to evaluate moulds.
    Alphabet weight_alphabet() const {
        Alphabet deg = alphabet();
        std::vector<Letter> ls;
        for (const auto& l : deg.letters) ls.push_back(Letter::weight(deg.additive_weight(l)));
        return Alphabet::abstract_additive(std::move(ls));
    }

    Scalar weight_of(const DegreeVector& n) const {
        Scalar w(0);
        for (std::size_t i = 0; i < n.size(); ++i) w += Scalar(n[i]) * lambda[i];
        return w;
    }

    const HomOp& part(const DegreeVector& n) const {
        auto it = parts.find(n);
        if (it == parts.end()) throw unknown_letter("no homogeneous part of degree " + Letter::degree(n).str());
        return it->second;
    }

    /// Component X_i as a jet.
    Jet component(int i, int trunc) const {
        Jet x = Jet::coordinate(nu, trunc, i);
        Jet out = lambda[static_cast<std::size_t>(i)] * x;
        for (const auto& [n, op] : parts) out += op.apply(x);
        return out;
    }

    /// X as a derivation on jets: phi -> sum_i X_i d_i phi.
    JetOperator as_operator(int trunc) const {
        std::vector<Jet> comps;
        comps.reserve(static_cast<std::size_t>(nu));
        for (int i = 0; i < nu; ++i) comps.push_back(component(i, trunc));
        return JetOperator{[comps](const Jet& f) {
            Jet acc(f.nu, f.degree_bound);
            for (int i = 0; i < f.nu; ++i) acc += comps[static_cast<std::size_t>(i)] * f.derivative(i);
            return acc;
        }};
    }

    JetOperator linear_operator(int trunc) const {
        auto lam = lambda;
        (void)trunc;
        return JetOperator{[lam](const Jet& f) {
            Jet acc(f.nu, f.degree_bound);
            for (const auto& [m, c] : f.p.terms()) {
                Scalar w(0);
                for (std::size_t i = 0; i < lam.size(); ++i) w += Scalar(m[i]) * lam[i];
                acc.p.add_term(m, c * w);
            }
            return acc;
        }};
    }
};

/// Split a raw field (diagonal spectrum lambda plus polynomial terms that
/// vanish at 0) into admissible homogeneous derivations D_n.
inline PreparedField decompose(int nu, std::vector<Scalar> lambda, const std::vector<LocalTerm>& terms) {
    if (static_cast<int>(lambda.size()) != nu) throw not_prepared("spectrum dimension mismatch");
    PreparedField f;
    f.nu = nu;
    f.lambda = std::move(lambda);
    for (const auto& t : terms) {
        if (t.coef == 0) continue;
        if (static_cast<int>(t.exponents.size()) != nu || t.direction < 0 || t.direction >= nu)
            throw not_prepared("term shape does not match the dimension");
        for (int e : t.exponents)
            if (e < 0) throw not_local("field components must be polynomial at the origin");
        if (monomial_degree(t.exponents) == 0) throw not_local("field components must vanish at 0");
        DegreeVector n(t.exponents.begin(), t.exponents.end());
        n[static_cast<std::size_t>(t.direction)] -= 1;
        if (total_degree(n) < 1)
            throw not_prepared("linear terms belong to the diagonal part, not to the homogeneous terms");
        if (!is_admissible_degree(n))
            throw inadmissible_degree("term of degree " + Letter::degree(n).str() + " is not admissible");
        auto [it, inserted] = f.parts.try_emplace(n, HomOp::derivation(n, std::vector<Scalar>(nu, Scalar(0))));
        it->second.alpha[static_cast<std::size_t>(t.direction)] += t.coef;
    }
    // drop parts that cancelled to zero
    for (auto it = f.parts.begin(); it != f.parts.end();) {
        bool all_zero = true;
        for (const auto& c : it->second.alpha) all_zero = all_zero && c == 0;
        it = all_zero ? f.parts.erase(it) : std::next(it);
    }
    return f;
}

/// All words over A(X) whose total degree weight sum |n^1| + ... + |n^r| is
/// at most maxweight (each letter raises polynomial degree by >= 1, so these
/// are the only words acting nontrivially on jets of that degree).
inline std::vector<std::vector<DegreeVector>> field_words_by_weight(const PreparedField& f, int maxweight) {
    std::vector<std::vector<DegreeVector>> out;
    std::vector<DegreeVector> cur;
    std::function<void(int)> rec = [&](int budget) {
        for (const auto& [n, op] : f.parts) {
            int w = static_cast<int>(total_degree(n));
            if (w > budget) continue;
            cur.push_back(n);
            out.push_back(cur);
            rec(budget - w);
            cur.pop_back();
        }
    };
    rec(maxweight);
    return out;
}

/// Words w over A(X) with length <= maxlen and vanishing weight sum
/// ||omega(w)|| = 0, in lexicographic order.
inline std::vector<Word> resonance_scan(const PreparedField& f, int maxlen) {
    std::vector<Word> res;
    Alphabet a = f.alphabet();
    for (const auto& w : words_up_to(a.letters, maxlen)) {
        if (w.is_empty()) continue;
        if (word_weight(a, w) == 0) res.push_back(w);
    }
    return res;
}

/// Contraction sum_w M^{omega(w)} B_w acting on jets truncated at `trunc`.
/// M is a mould over the abstract weight alphabet; it is evaluated lazily, so
/// its poles only matter on words that act nontrivially.
inline JetOperator contract(const Mould& m, const PreparedField& f, int trunc) {
    auto words = field_words_by_weight(f, trunc);
    auto shared = std::make_shared<std::vector<std::vector<DegreeVector>>>(std::move(words));
    Scalar empty = m.empty_value();
    PreparedField field = f;
    return JetOperator{[m, field, shared, empty](const Jet& phi) {
        Jet acc = empty * phi;
        for (const auto& dw : *shared) {
            // B_w applies the word's letters right to left (see comould)
            Jet b = phi;
            for (auto it = dw.rbegin(); it != dw.rend(); ++it) {
                b = field.part(*it).apply(b);
                if (b.is_zero()) break;
            }
            if (b.is_zero()) continue;
            std::vector<Letter> wl;
            wl.reserve(dw.size());
            for (const auto& n : dw) wl.push_back(Letter::weight(field.weight_of(n)));
            acc += m(Word(std::move(wl))) * b;
        }
        return acc;
    }};
}

// ---------------------------------------------------------------------------
// Prepared diffeos

/// Local diffeo in prepared form: multiplicative spectrum q plus
/// homogeneous operator parts B_n with F = F_lin (1 + sum_n B_n).
struct PreparedDiffeo {
    int nu = 0;
    std::vector<Scalar> multipliers;
    std::map<DegreeVector, HomOp> parts;
    std::vector<Jet> components;  // f_i as jets
    int degree_bound = 0;

    Alphabet alphabet() const {
        std::vector<Letter> ls;
        for (const auto& [n, op] : parts) ls.push_back(Letter::degree(n));
        return Alphabet::degrees(nu, {}, std::move(ls), multipliers);
    }

    Scalar mult_weight_of(const DegreeVector& n) const {
        Scalar w(1);
        for (std::size_t i = 0; i < n.size(); ++i) w *= scalar_pow(multipliers[i], n[i]);
        return w;
    }

    const HomOp& part(const DegreeVector& n) const {
        auto it = parts.find(n);
        if (it == parts.end()) throw unknown_letter("no operator part of degree " + Letter::degree(n).str());
        return it->second;
    }

    /// Substitution operator F: phi -> phi o f.
    JetOperator substitution() const {
        auto comps = components;
        return JetOperator{[comps](const Jet& phi) { return phi.substitute(comps); }};
    }

    /// F_lin: phi -> phi(q_1 x_1, ..., q_nu x_nu).
    JetOperator linear_substitution() const {
        auto q = multipliers;
        return JetOperator{[q](const Jet& phi) {
            Jet acc(phi.nu, phi.degree_bound);
            for (const auto& [m, c] : phi.p.terms()) {
                Scalar factor(1);
                for (std::size_t i = 0; i < q.size(); ++i) factor *= scalar_pow(q[i], m[i]);
                acc.p.add_term(m, c * factor);
            }
            return acc;
        }};
    }

    JetOperator inverse_linear_substitution() const {
        auto q = multipliers;
        return JetOperator{[q](const Jet& phi) {
            Jet acc(phi.nu, phi.degree_bound);
            for (const auto& [m, c] : phi.p.terms()) {
                Scalar factor(1);
                for (std::size_t i = 0; i < q.size(); ++i) factor *= scalar_pow(q[i], m[i]);
                acc.p.add_term(m, c / factor);
            }
            return acc;
        }};
    }
};

/// Extract the homogeneous operator parts of a local diffeo
/// f_i = q_i x_i + (higher-order terms), via the Taylor decomposition
/// F = F_lin (1 + sum_n B_n) validated on jets up to degree N.
inline PreparedDiffeo diffeo_parts(int nu, std::vector<Scalar> multipliers, const std::vector<LocalTerm>& nonlinear,
                                   int trunc) {
    PreparedDiffeo d;
    d.nu = nu;
    d.degree_bound = trunc;
    for (const auto& q : multipliers)
        if (q == 0) throw not_local("diffeo multipliers must be invertible");
    d.multipliers = std::move(multipliers);
    // f components
    for (int i = 0; i < nu; ++i)
        d.components.push_back(d.multipliers[static_cast<std::size_t>(i)] * Jet::coordinate(nu, trunc, i));
    for (const auto& t : nonlinear) {
        if (t.coef == 0) continue;
        if (static_cast<int>(t.exponents.size()) != nu || t.direction < 0 || t.direction >= nu)
            throw not_prepared("term shape does not match the dimension");
        for (int e : t.exponents)
            if (e < 0) throw not_local("diffeo components must be polynomial at the origin");
        if (monomial_degree(t.exponents) == 0) throw not_local("diffeo must fix the origin");
        if (monomial_degree(t.exponents) == 1) throw not_prepared("linear part must be the diagonal q x");
        d.components[static_cast<std::size_t>(t.direction)] +=
            Jet::monomial(nu, trunc, t.exponents, t.coef);
    }
    // G = F_lin^{-1} o F is substitution by x -> f(q^{-1} x), tangent to the
    // identity; its homogeneous components in degree shift are the B_n.
    std::vector<Jet> g_args;
    for (int i = 0; i < nu; ++i) {
        Jet scaled(nu, trunc);
        for (const auto& [mm, c] : d.components[static_cast<std::size_t>(i)].p.terms()) {
            Scalar factor(1);
            for (std::size_t k = 0; k < d.multipliers.size(); ++k) factor *= scalar_pow(d.multipliers[k], mm[k]);
            scaled.p.add_term(mm, c / factor);
        }
        g_args.push_back(scaled);
    }
    std::map<DegreeVector, std::map<Monomial, Scalar>> tables;
    for (const auto& m : monomials_up_to(nu, trunc)) {
        Jet image = Jet::monomial(nu, trunc, m, Scalar(1)).substitute(g_args);
        for (const auto& [k, c] : image.p.terms()) {
            DegreeVector n(k.size());
            bool zero_shift = true;
            for (std::size_t i = 0; i < k.size(); ++i) {
                n[i] = static_cast<std::int64_t>(k[i]) - m[i];
                if (n[i] != 0) zero_shift = false;
            }
            if (zero_shift) continue;  // the identity part
            tables[n][m] = c;
        }
    }
    for (auto& [n, table] : tables) d.parts[n] = HomOp::general(n, std::move(table), trunc);
    return d;
}

/// Words over A(F) with weight <= maxweight; same enumeration as for fields.
inline std::vector<std::vector<DegreeVector>> diffeo_words_by_weight(const PreparedDiffeo& d, int maxweight) {
    std::vector<std::vector<DegreeVector>> out;
    std::vector<DegreeVector> cur;
    std::function<void(int)> rec = [&](int budget) {
        for (const auto& [n, op] : d.parts) {
            int w = static_cast<int>(total_degree(n));
            if (w > budget || w < 1) continue;
            cur.push_back(n);
            out.push_back(cur);
            rec(budget - w);
            cur.pop_back();
        }
    };
    rec(maxweight);
    return out;
}

/// Contraction sum_w M^{omega(w)} B_w for a diffeo; the mould lives on the
/// multiplicative weight alphabet e^{omega(n)} = q^n.
inline JetOperator contract(const Mould& m, const PreparedDiffeo& d, int trunc) {
    auto words = diffeo_words_by_weight(d, trunc);
    auto shared = std::make_shared<std::vector<std::vector<DegreeVector>>>(std::move(words));
    Scalar empty = m.empty_value();
    PreparedDiffeo diff = d;
    return JetOperator{[m, diff, shared, empty](const Jet& phi) {
        Jet acc = empty * phi;
        for (const auto& dw : *shared) {
            // B_w applies the word's letters right to left (see comould)
            Jet b = phi;
            for (auto it = dw.rbegin(); it != dw.rend(); ++it) {
                b = diff.part(*it).apply(b);
                if (b.is_zero()) break;
            }
            if (b.is_zero()) continue;
            std::vector<Letter> wl;
            wl.reserve(dw.size());
            for (const auto& n : dw) wl.push_back(Letter::weight(diff.mult_weight_of(n)));
            acc += m(Word(std::move(wl))) * b;
        }
        return acc;
    }};
}

}  // namespace moulcalc
