#pragma once

#include <map>
#include <vector>

#include "moulcalc/jet.hpp"
#include "moulcalc/mould.hpp"

namespace moulcalc {

/// Homogeneous operator of degree n: maps x^m to c_{n,m} x^{n+m}.
/// Derivations carry the coefficient vector of sum_i alpha_i x^{n+e_i}
/// partial_i; general finite-order operators carry the c_{n,m} table up to a
/// degree bound.
struct HomOp {
    enum class Kind { derivation, general };

    DegreeVector degree;
    Kind kind = Kind::derivation;
    std::vector<Scalar> alpha;              // derivation coefficients
    std::map<Monomial, Scalar> coeff_table; // general: m -> c_{n,m}
    int table_bound = -1;

    static HomOp derivation(DegreeVector n, std::vector<Scalar> a) {
        HomOp op;
        op.degree = std::move(n);
        op.kind = Kind::derivation;
        op.alpha = std::move(a);
        return op;
    }

    static HomOp general(DegreeVector n, std::map<Monomial, Scalar> table, int bound) {
        HomOp op;
        op.degree = std::move(n);
        op.kind = Kind::general;
        op.coeff_table = std::move(table);
        op.table_bound = bound;
        return op;
    }

    int nu() const { return static_cast<int>(degree.size()); }

    /// c_{n,m}: the factor in B_n(x^m) = c_{n,m} x^{n+m}.
    Scalar coeff_on(const Monomial& m) const {
        if (kind == Kind::derivation) {
            Scalar c(0);
            for (std::size_t i = 0; i < alpha.size(); ++i)
                if (alpha[i] != 0 && m[i] != 0) c += alpha[i] * m[i];
            return c;
        }
        if (table_bound >= 0 && monomial_degree(m) > table_bound)
            throw mould_error("homogeneous operator table exceeded");
        auto it = coeff_table.find(m);
        return it == coeff_table.end() ? Scalar(0) : it->second;
    }

    Jet apply(const Jet& f) const {
        Jet out(f.nu, f.degree_bound);
        for (const auto& [m, c] : f.p.terms()) {
            Scalar factor = coeff_on(m);
            if (factor == 0) continue;
            Monomial shifted(m);
            bool valid = true;
            int deg = 0;
            for (std::size_t i = 0; i < shifted.size(); ++i) {
                shifted[i] += static_cast<int>(degree[i]);
                if (shifted[i] < 0) valid = false;
                deg += shifted[i];
            }
            if (!valid)
                throw mould_error("homogeneous operator produced a negative exponent");
            if (deg > f.degree_bound) continue;
            out.p.add_term(shifted, c * factor);
        }
        return out;
    }

    /// The coefficient of partial_i: B(x_i) for a first-order operator,
    /// materialized as a jet.
    Jet coefficient_jet(int i, int n_trunc) const {
        if (kind != Kind::derivation) throw mould_error("coefficient jets exist for derivations only");
        Jet out(nu(), n_trunc);
        if (alpha[static_cast<std::size_t>(i)] == 0) return out;
        Monomial m(degree.size(), 0);
        int deg = 0;
        for (std::size_t j = 0; j < degree.size(); ++j) {
            m[j] = static_cast<int>(degree[j]) + (static_cast<int>(j) == i ? 1 : 0);
            if (m[j] < 0) return out;  // no x^{n+e_i} monomial in this slot
            deg += m[j];
        }
        if (deg > n_trunc) return out;
        out.p.add_term(m, alpha[static_cast<std::size_t>(i)]);
        return out;
    }
};

/// An operator acting on jets, with helpers to materialize and compare its
/// action on the monomial basis.
struct JetOperator {
    std::function<Jet(const Jet&)> fn;

    Jet operator()(const Jet& f) const { return fn(f); }

    static JetOperator identity() {
        return JetOperator{[](const Jet& f) { return f; }};
    }

    /// this o other: apply `other` first.
    JetOperator after(const JetOperator& other) const {
        auto f = fn;
        auto g = other.fn;
        return JetOperator{[f, g](const Jet& x) { return f(g(x)); }};
    }

    friend JetOperator operator+(const JetOperator& a, const JetOperator& b) {
        auto f = a.fn, g = b.fn;
        return JetOperator{[f, g](const Jet& x) { return f(x) + g(x); }};
    }
    friend JetOperator operator-(const JetOperator& a, const JetOperator& b) {
        auto f = a.fn, g = b.fn;
        return JetOperator{[f, g](const Jet& x) { return f(x) - g(x); }};
    }
    friend JetOperator operator*(const Scalar& c, const JetOperator& a) {
        auto f = a.fn;
        return JetOperator{[c, f](const Jet& x) { return c * f(x); }};
    }
};

/// Action of an operator on every monomial of total degree <= maxdeg.
inline std::map<Monomial, Jet> operator_matrix(const JetOperator& op, int nu, int maxdeg) {
    std::map<Monomial, Jet> out;
    for (const auto& m : monomials_up_to(nu, maxdeg)) out[m] = op(Jet::monomial(nu, maxdeg, m, Scalar(1)));
    return out;
}

inline bool is_zero_operator(const JetOperator& op, int nu, int maxdeg) {
    for (const auto& [m, jet] : operator_matrix(op, nu, maxdeg))
        if (!jet.is_zero()) return false;
    return true;
}

inline bool operators_equal(const JetOperator& a, const JetOperator& b, int nu, int maxdeg) {
    return is_zero_operator(a - b, nu, maxdeg);
}

/// Comould: B_w = B_{omega_r} ... B_{omega_1}, with the product read right
/// to left: B_{omega_r} acts first. This reading (rather than "first letter
/// acts first") makes the contraction multiplicative, P_{M x N} = P_M o P_N,
/// and pairs the prefix-sum linearization mould Na with its conjugacy
/// equation; the alternative reading forces the retrograde of every mould.
/// The tests pin this choice.
inline JetOperator comould(std::vector<const HomOp*> ops) {
    return JetOperator{[ops = std::move(ops)](const Jet& f) {
        Jet acc = f;
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) acc = (*it)->apply(acc);
        return acc;
    }};
}

}  // namespace moulcalc
