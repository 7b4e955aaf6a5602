#pragma once

#include <vector>

#include "moulcalc/catalog.hpp"
#include "moulcalc/localobj.hpp"

namespace moulcalc {

/// Result of a normalization: the change of variables x = h(y) as coordinate
/// jets, and the conjugated object's component jets.
struct NormalFormResult {
    std::vector<Jet> normalizer;  // h_i(y)
    std::vector<Jet> conjugated;  // components of the conjugated field
};

namespace detail {

inline std::vector<Jet> coordinate_jets(int nu, int trunc) {
    std::vector<Jet> out;
    for (int i = 0; i < nu; ++i) out.push_back(Jet::coordinate(nu, trunc, i));
    return out;
}

/// Components of Theta X Theta^{-1} as a derivation: (conj X)(y_i).
inline std::vector<Jet> conjugate_field_components(const JetOperator& theta, const JetOperator& theta_inv,
                                                   const JetOperator& field_op, int nu, int trunc) {
    std::vector<Jet> out;
    for (int i = 0; i < nu; ++i) out.push_back(theta(field_op(theta_inv(Jet::coordinate(nu, trunc, i)))));
    return out;
}

}  // namespace detail

/// Formal linearization of a non-resonant prepared field through the mould
/// Na: Theta = sum Na^{omega(w)} B_w conjugates X to its linear part,
/// Theta X Theta^{-1} = X_lin, and the change of variables is
/// h_i = Theta(x_i). Throws resonant_error when a word of weight <= trunc
/// has vanishing weight sum.
inline NormalFormResult linearize(const PreparedField& f, int trunc) {
    Alphabet wa = f.weight_alphabet();
    for (const auto& dw : field_words_by_weight(f, trunc)) {
        Scalar s(0);
        for (const auto& n : dw) s += f.weight_of(n);
        if (s == 0) {
            std::vector<Letter> wl;
            for (const auto& n : dw) wl.push_back(Letter::degree(n));
            throw resonant_error(Word(std::move(wl)).str());
        }
    }
    Mould na = catalog::na_mould(wa);
    JetOperator theta = contract(na, f, trunc);
    JetOperator theta_inv = contract(mul_inverse(na), f, trunc);
    NormalFormResult res;
    for (int i = 0; i < f.nu; ++i) res.normalizer.push_back(theta(Jet::coordinate(f.nu, trunc, i)));
    res.conjugated = detail::conjugate_field_components(theta, theta_inv, f.as_operator(trunc), f.nu, trunc);
    return res;
}

enum class NormalizeMode { linearize, dulac };

/// Classical order-by-order normalization oracle, sharing no code with the
/// mould path. Solves X(h(y)) = Dh(y) . (X_lin + R)(y) degree by degree,
/// eliminating every non-resonant monomial; in dulac mode the resonant
/// monomials stay in R, in linearize mode they raise resonant_error.
inline NormalFormResult oracle_normalize(const PreparedField& f, int trunc, NormalizeMode mode) {
    const int nu = f.nu;
    std::vector<Jet> h = detail::coordinate_jets(nu, trunc);
    std::vector<Jet> r(static_cast<std::size_t>(nu), Jet(nu, trunc));  // resonant terms kept
    std::vector<Jet> xcomp;
    for (int i = 0; i < nu; ++i) xcomp.push_back(f.component(i, trunc));

    for (int k = 2; k <= trunc; ++k) {
        for (int i = 0; i < nu; ++i) {
            // T_i = X_i o h - sum_j dh_i/dy_j (lambda_j y_j + R_j); its
            // degree-k part is the homological defect for (i, k).
            Jet t = xcomp[static_cast<std::size_t>(i)].substitute(h);
            for (int j = 0; j < nu; ++j) {
                Jet vj = f.lambda[static_cast<std::size_t>(j)] * Jet::coordinate(nu, trunc, j) +
                         r[static_cast<std::size_t>(j)];
                t = t - h[static_cast<std::size_t>(i)].derivative(j) * vj;
            }
            for (const auto& [m, c] : t.p.terms()) {
                if (monomial_degree(m) != k) continue;
                Scalar denom(0);
                for (std::size_t jj = 0; jj < m.size(); ++jj) denom += Scalar(m[jj]) * f.lambda[jj];
                denom -= f.lambda[static_cast<std::size_t>(i)];
                if (denom == 0) {
                    if (mode == NormalizeMode::linearize)
                        throw resonant_error("monomial " + Jet::monomial(nu, trunc, m, Scalar(1)).str() +
                                             " in component " + std::to_string(i));
                    r[static_cast<std::size_t>(i)].p.add_term(m, c);
                } else {
                    h[static_cast<std::size_t>(i)].p.add_term(m, c / denom);
                }
            }
        }
    }
    NormalFormResult res;
    res.normalizer = h;
    for (int i = 0; i < nu; ++i)
        res.conjugated.push_back(f.lambda[static_cast<std::size_t>(i)] * Jet::coordinate(nu, trunc, i) +
                                 r[static_cast<std::size_t>(i)]);
    return res;
}

/// The pruned prenormal form X_tram = X_lin + sum_w Tram^{omega(w)} B_w;
/// every monomial surviving in the output comes from a resonant word.
inline std::vector<Jet> prenormal_tram(const PreparedField& f, int trunc) {
    Mould tram = catalog::tram_mould(f.weight_alphabet());
    JetOperator op = contract(tram, f, trunc);  // Tram^{empty} = 0
    std::vector<Jet> out;
    for (int i = 0; i < f.nu; ++i) {
        Jet xi = Jet::coordinate(f.nu, trunc, i);
        out.push_back(f.lambda[static_cast<std::size_t>(i)] * xi + op(xi));
    }
    return out;
}

/// Formal linearization of a non-resonant prepared diffeo. The normalizer
/// is Theta = sum_w M^w B_w with M the e^nabla twist of the retrograde
/// conjugate of Ne_inv -- in closed form
///   M^w = e^{||w||} / prod_i (e^{omega_1 + ... + omega_i} - 1)
/// -- so that Theta(x_i) = h_i solves f o h = h o f_lin and
/// Theta F Theta^{-1} = F_lin on jets.
inline NormalFormResult diffeo_linearize(const PreparedDiffeo& d, int trunc) {
    for (const auto& dw : diffeo_words_by_weight(d, trunc)) {
        Scalar s(1);
        for (const auto& n : dw) s *= d.mult_weight_of(n);
        if (s == 1) {
            std::vector<Letter> wl;
            for (const auto& n : dw) wl.push_back(Letter::degree(n));
            throw resonant_error(Word(std::move(wl)).str(), "multiplicatively resonant word");
        }
    }
    std::vector<Letter> wl;
    for (const auto& [n, op] : d.parts) wl.push_back(Letter::weight(d.mult_weight_of(n)));
    Alphabet wa = Alphabet::abstract_multiplicative(std::move(wl));
    Mould m = exp_nabla(retrograde_mould(catalog::ne_inv_mould(wa)));
    Mould m_inv = exp_nabla(retrograde_mould(catalog::ne_mould(wa)));
    JetOperator theta = contract(m, d, trunc);
    JetOperator theta_inv = contract(m_inv, d, trunc);
    NormalFormResult res;
    for (int i = 0; i < d.nu; ++i) res.normalizer.push_back(theta(Jet::coordinate(d.nu, trunc, i)));
    // conjugated substitution operator Theta F Theta^{-1} applied to the
    // coordinates; equals q_i x_i exactly when linearization succeeded
    JetOperator conj = theta.after(d.substitution()).after(theta_inv);
    for (int i = 0; i < d.nu; ++i) res.conjugated.push_back(conj(Jet::coordinate(d.nu, trunc, i)));
    return res;
}

/// Classical diffeo linearization oracle: solve f(h(y)) = h(q y) order by
/// order with explicit small divisors q^m - q_i.
inline NormalFormResult diffeo_oracle(const PreparedDiffeo& d, int trunc) {
    const int nu = d.nu;
    std::vector<Jet> h = detail::coordinate_jets(nu, trunc);
    for (int k = 2; k <= trunc; ++k) {
        for (int i = 0; i < nu; ++i) {
            // defect T_i = f_i o h - h_i o f_lin
            Jet fh = d.components[static_cast<std::size_t>(i)].substitute(h);
            Jet hq(nu, trunc);
            for (const auto& [m, c] : h[static_cast<std::size_t>(i)].p.terms()) {
                Scalar factor(1);
                for (std::size_t jj = 0; jj < m.size(); ++jj)
                    factor *= scalar_pow(d.multipliers[jj], m[jj]);
                hq.p.add_term(m, c * factor);
            }
            Jet t = fh - hq;
            for (const auto& [m, c] : t.p.terms()) {
                if (monomial_degree(m) != k) continue;
                Scalar qm(1);
                for (std::size_t jj = 0; jj < m.size(); ++jj) qm *= scalar_pow(d.multipliers[jj], m[jj]);
                Scalar denom = qm - d.multipliers[static_cast<std::size_t>(i)];
                if (denom == 0)
                    throw resonant_error("monomial " + Jet::monomial(nu, trunc, m, Scalar(1)).str() +
                                         " in component " + std::to_string(i));
                h[static_cast<std::size_t>(i)].p.add_term(m, c / denom);
            }
        }
    }
    NormalFormResult res;
    res.normalizer = h;
    for (int i = 0; i < nu; ++i)
        res.conjugated.push_back(d.multipliers[static_cast<std::size_t>(i)] * Jet::coordinate(nu, trunc, i));
    return res;
}

}  // namespace moulcalc
