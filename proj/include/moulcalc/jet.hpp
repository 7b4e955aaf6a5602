#pragma once

#include <functional>
#include <vector>

#include "moulcalc/letter.hpp"
#include "moulcalc/poly.hpp"

namespace moulcalc {

/// Polynomial jet: element of K[x_1..x_nu] truncated at total degree N.
/// All arithmetic re-truncates, so jets are closed under +, * and
/// substitution.
struct Jet {
    int nu = 0;
    int degree_bound = 0;
    Poly p;

    Jet() = default;
    Jet(int nu_, int n) : nu(nu_), degree_bound(n), p(nu_) {}
    Jet(int nu_, int n, Poly q) : nu(nu_), degree_bound(n), p(q.truncated(n)) {}

    static Jet zero(int nu, int n) { return Jet(nu, n); }
    static Jet constant(int nu, int n, const Scalar& c) { return Jet(nu, n, Poly::constant(nu, c)); }
    static Jet coordinate(int nu, int n, int i) { return Jet(nu, n, Poly::variable(nu, i)); }
    static Jet monomial(int nu, int n, Monomial m, const Scalar& c) {
        return Jet(nu, n, Poly::monomial(nu, std::move(m), c));
    }

    bool is_zero() const { return p.is_zero(); }
    Scalar coeff(const Monomial& m) const { return p.coeff(m); }

    friend Jet operator+(const Jet& a, const Jet& b) { return Jet(a.nu, a.degree_bound, a.p + b.p); }
    friend Jet operator-(const Jet& a, const Jet& b) { return Jet(a.nu, a.degree_bound, a.p - b.p); }
    friend Jet operator*(const Jet& a, const Jet& b) {
        return Jet(a.nu, a.degree_bound, (a.p * b.p).truncated(a.degree_bound));
    }
    friend Jet operator*(const Scalar& c, const Jet& a) { return Jet(a.nu, a.degree_bound, c * a.p); }
    friend bool operator==(const Jet& a, const Jet& b) { return a.p == b.p; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }
    Jet& operator+=(const Jet& b) {
        p += b.p;
        p = p.truncated(degree_bound);
        return *this;
    }

    Jet derivative(int i) const { return Jet(nu, degree_bound, p.derivative(i)); }

    /// phi |-> phi(f_1, ..., f_nu) truncated.
    Jet substitute(const std::vector<Jet>& args) const {
        std::vector<Poly> ps;
        ps.reserve(args.size());
        for (const auto& a : args) ps.push_back(a.p);
        return Jet(nu, degree_bound, p.substitute(ps, degree_bound));
    }

    std::string str() const { return p.str("x"); }
};

/// All exponent vectors with nu entries and total degree <= maxdeg.
inline std::vector<Monomial> monomials_up_to(int nu, int maxdeg) {
    std::vector<Monomial> out;
    Monomial cur(static_cast<std::size_t>(nu), 0);
    // lexicographic enumeration by running total
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == nu) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, remaining - e);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, maxdeg);
    return out;
}

}  // namespace moulcalc
