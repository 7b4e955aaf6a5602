#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "moulcalc/errors.hpp"

namespace moulcalc {

/// Exact rational scalar. Every coefficient in the library is one of these;
/// no floating point appears anywhere.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Scalar scalar_pow(const Scalar& base, std::int64_t e) {
    if (e == 0) return Scalar(1);
    if (e < 0) {
        if (base == 0) throw mould_error("zero raised to a negative power");
        return Scalar(1) / scalar_pow(base, -e);
    }
    Scalar r(1), b(base);
    std::int64_t n = e;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline Scalar factorial(int n) {
    Integer f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return Scalar(f);
}

/// Canonical string form: "p" when the denominator is 1, otherwise "p/q"
/// with q > 0 and gcd(p, q) = 1 (cpp_rational keeps values canonical).
inline std::string to_string(const Scalar& s) {
    if (denominator(s) == 1) return numerator(s).str();
    return numerator(s).str() + "/" + denominator(s).str();
}

inline Scalar parse_scalar(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Scalar(Integer(text));
        Integer p(text.substr(0, slash));
        Integer q(text.substr(slash + 1));
        if (q == 0) throw mould_error("rational with zero denominator: " + text);
        return Scalar(p, q);
    } catch (const std::exception& e) {
        throw mould_error("cannot parse rational '" + text + "': " + e.what());
    }
}

inline bool is_integer(const Scalar& s) { return denominator(s) == 1; }

}  // namespace moulcalc
