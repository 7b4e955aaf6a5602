#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "moulcalc/scalar.hpp"

namespace moulcalc {

/// Exponent vector of a monomial.
using Monomial = std::vector<int>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

/// Sparse multivariate polynomial over Scalar with a fixed variable count.
class Poly {
public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Scalar& c) {
        Poly p(nvars);
        if (c != 0) p.terms_[Monomial(static_cast<std::size_t>(nvars), 0)] = c;
        return p;
    }
    static Poly variable(int nvars, int i, const Scalar& coef = Scalar(1)) {
        Poly p(nvars);
        Monomial m(static_cast<std::size_t>(nvars), 0);
        m[static_cast<std::size_t>(i)] = 1;
        if (coef != 0) p.terms_[std::move(m)] = coef;
        return p;
    }
    static Poly monomial(int nvars, Monomial m, const Scalar& coef) {
        Poly p(nvars);
        if (coef != 0) p.terms_[std::move(m)] = coef;
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }

    Scalar coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Scalar& c, const Poly& a) {
        Poly r(a.nvars_);
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_[m] = c * k;
        return r;
    }
    friend Poly operator-(const Poly& a) { return Scalar(-1) * a; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly& operator+=(const Poly& b) {
        for (const auto& [m, c] : b.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& b) {
        for (const auto& [m, c] : b.terms_) add_term(m, -c);
        return *this;
    }

    /// Partial derivative in variable i.
    Poly derivative(int i) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            int e = m[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            Monomial mm(m);
            --mm[static_cast<std::size_t>(i)];
            r.add_term(mm, Scalar(e) * c);
        }
        return r;
    }

    /// Drop every term of total degree > maxdeg.
    Poly truncated(int maxdeg) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) <= maxdeg) r.terms_.emplace(m, c);
        return r;
    }

    /// Rename variable `from` to variable `to`.
    Poly rename_variable(int from, int to) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial mm(m);
            mm[static_cast<std::size_t>(to)] += mm[static_cast<std::size_t>(from)];
            mm[static_cast<std::size_t>(from)] = 0;
            r.add_term(mm, c);
        }
        return r;
    }

    Scalar evaluate(const std::vector<Scalar>& point) const {
        Scalar acc(0);
        for (const auto& [m, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < m.size(); ++i) t *= scalar_pow(point[i], m[i]);
            acc += t;
        }
        return acc;
    }

    /// Substitute each variable by a polynomial, truncating at maxdeg when
    /// nonnegative.
    Poly substitute(const std::vector<Poly>& args, int maxdeg = -1) const {
        Poly acc(args.empty() ? nvars_ : args[0].nvars());
        for (const auto& [m, c] : terms_) {
            Poly t = Poly::constant(acc.nvars(), c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e) {
                    t = t * args[i];
                    if (maxdeg >= 0) t = t.truncated(maxdeg);
                }
            acc += t;
        }
        if (maxdeg >= 0) acc = acc.truncated(maxdeg);
        return acc;
    }

    std::string str(const std::string& base = "v") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << to_string(c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) {
                    os << "*" << base << i;
                    if (m[i] != 1) os << "^" << m[i];
                }
        }
        return os.str();
    }

private:
    int nvars_;
    std::map<Monomial, Scalar> terms_;
};

/// Divided difference (P - P[x_i := x_j]) / (x_i - x_j), computed exactly by
/// telescoping each power of x_i; no division is performed.
inline Poly divided_difference(const Poly& p, int i, int j) {
    Poly r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        int a = m[static_cast<std::size_t>(i)];
        // x_i^a rest  ->  sum_{t=0}^{a-1} x_i^t x_j^{a-1-t} rest
        for (int t = 0; t < a; ++t) {
            Monomial mm(m);
            mm[static_cast<std::size_t>(i)] = t;
            mm[static_cast<std::size_t>(j)] += a - 1 - t;
            r.add_term(mm, c);
        }
    }
    return r;
}

}  // namespace moulcalc
