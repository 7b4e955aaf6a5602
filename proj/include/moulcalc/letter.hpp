#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "moulcalc/errors.hpp"
#include "moulcalc/scalar.hpp"

namespace moulcalc {

/// Integer degree vector of a homogeneous operator.
using DegreeVector = std::vector<std::int64_t>;

inline std::int64_t total_degree(const DegreeVector& n) {
    return std::accumulate(n.begin(), n.end(), std::int64_t(0));
}

/// Prepared vector fields only admit degrees with entries >= 0, except at
/// most one entry equal to -1, and total degree >= 1.
inline bool is_admissible_degree(const DegreeVector& n) {
    int minus_ones = 0;
    for (auto v : n) {
        if (v == -1)
            ++minus_ones;
        else if (v < 0)
            return false;
    }
    return minus_ones <= 1 && total_degree(n) >= 1;
}

/// A letter is either a concrete degree vector or an abstract semigroup
/// element realized as an exact rational weight.
class Letter {
public:
    Letter() : payload_(Scalar(0)) {}
    explicit Letter(DegreeVector n) : payload_(std::move(n)) {}
    explicit Letter(Scalar w) : payload_(std::move(w)) {}
    static Letter degree(DegreeVector n) { return Letter(std::move(n)); }
    static Letter weight(Scalar w) { return Letter(std::move(w)); }

    bool is_degree() const { return std::holds_alternative<DegreeVector>(payload_); }
    const DegreeVector& degree_vector() const { return std::get<DegreeVector>(payload_); }
    const Scalar& abstract_weight() const { return std::get<Scalar>(payload_); }

    friend bool operator==(const Letter& a, const Letter& b) { return a.payload_ == b.payload_; }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.payload_.index() != b.payload_.index()) return a.payload_.index() < b.payload_.index();
        if (a.is_degree()) return a.degree_vector() < b.degree_vector();
        return a.abstract_weight() < b.abstract_weight();
    }

    std::string str() const {
        if (!is_degree()) return to_string(abstract_weight());
        std::ostringstream os;
        os << '[';
        const auto& n = degree_vector();
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (i) os << ',';
            os << n[i];
        }
        os << ']';
        return os.str();
    }

private:
    std::variant<DegreeVector, Scalar> payload_;
};

/// How abstract letters combine, and hence what "omega_1 + omega_2" means.
/// Degree vectors always add componentwise. `multiplicative` alphabets store
/// u = e^omega directly, so the semigroup operation is rational
/// multiplication; `free` alphabets carry no operation at all.
enum class SemigroupKind { additive, multiplicative, free_monoid };

/// Descriptor of the alphabet a mould lives on: the letter flavour, the
/// semigroup structure, and (for degree alphabets) the spectrum lambda and
/// multiplicative spectrum q used to weight letters.
struct Alphabet {
    SemigroupKind kind = SemigroupKind::additive;
    bool degree_letters = false;
    int nu = 0;
    std::vector<Scalar> lambda;       // additive spectrum, omega(n) = n . lambda
    std::vector<Scalar> multipliers;  // multiplicative spectrum, e^omega(n) = q^n
    std::vector<Letter> letters;      // finite generating set used for enumeration

    static Alphabet abstract_additive(std::vector<Letter> ls = {}) {
        Alphabet a;
        a.kind = SemigroupKind::additive;
        a.letters = std::move(ls);
        return a;
    }
    static Alphabet abstract_multiplicative(std::vector<Letter> ls = {}) {
        Alphabet a;
        a.kind = SemigroupKind::multiplicative;
        a.letters = std::move(ls);
        return a;
    }
    static Alphabet abstract_free(std::vector<Letter> ls = {}) {
        Alphabet a;
        a.kind = SemigroupKind::free_monoid;
        a.letters = std::move(ls);
        return a;
    }
    static Alphabet degrees(int nu, std::vector<Scalar> lambda, std::vector<Letter> ls = {},
                            std::vector<Scalar> multipliers = {}) {
        Alphabet a;
        a.kind = SemigroupKind::additive;
        a.degree_letters = true;
        a.nu = nu;
        a.lambda = std::move(lambda);
        a.multipliers = std::move(multipliers);
        a.letters = std::move(ls);
        return a;
    }

    bool has_semigroup() const { return kind != SemigroupKind::free_monoid; }

    /// Semigroup sum of two letters (contraction of adjacent letters).
    Letter add(const Letter& a, const Letter& b) const {
        if (a.is_degree() != b.is_degree()) throw alphabet_mismatch("cannot add letters of different payloads");
        if (a.is_degree()) {
            const auto& x = a.degree_vector();
            const auto& y = b.degree_vector();
            if (x.size() != y.size()) throw alphabet_mismatch("degree vectors of different dimension");
            DegreeVector z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
            return Letter(std::move(z));
        }
        switch (kind) {
            case SemigroupKind::additive: return Letter(a.abstract_weight() + b.abstract_weight());
            case SemigroupKind::multiplicative: return Letter(a.abstract_weight() * b.abstract_weight());
            case SemigroupKind::free_monoid: throw no_semigroup();
        }
        throw no_semigroup();
    }

    /// Additive weight omega of a letter: n . lambda for degree letters, the
    /// stored weight for abstract additive letters.
    Scalar additive_weight(const Letter& l) const {
        if (l.is_degree()) {
            const auto& n = l.degree_vector();
            if (lambda.size() != n.size()) throw alphabet_mismatch("degree letter without a spectrum");
            Scalar w(0);
            for (std::size_t i = 0; i < n.size(); ++i) w += Scalar(n[i]) * lambda[i];
            return w;
        }
        if (kind != SemigroupKind::additive) throw no_semigroup("letter has no additive weight");
        return l.abstract_weight();
    }

    /// Multiplicative weight e^omega of a letter: q^n for degree letters with
    /// a multiplicative spectrum, the stored weight for multiplicative ones.
    Scalar multiplicative_weight(const Letter& l) const {
        if (l.is_degree()) {
            const auto& n = l.degree_vector();
            if (multipliers.size() != n.size()) throw alphabet_mismatch("degree letter without multipliers");
            Scalar w(1);
            for (std::size_t i = 0; i < n.size(); ++i) w *= scalar_pow(multipliers[i], n[i]);
            return w;
        }
        if (kind != SemigroupKind::multiplicative) throw no_semigroup("letter has no multiplicative weight");
        return l.abstract_weight();
    }

    /// Structural compatibility for binary mould operations. The generating
    /// letter lists may differ; the semantics must agree.
    bool compatible(const Alphabet& o) const {
        return kind == o.kind && degree_letters == o.degree_letters && nu == o.nu && lambda == o.lambda &&
               multipliers == o.multipliers;
    }
};

}  // namespace moulcalc
