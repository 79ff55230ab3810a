#pragma once

// Exact arithmetic aliases and small numeric helpers shared by the whole
// library.  Everything downstream works over Int/Rat; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace mukai {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integer(q)) throw std::domain_error("to_int: value is not an integer: " + q.str());
    return numerator(q);
}

inline Rat rat(long n) { return Rat(n); }
inline Rat rat(long n, long d) { return Rat(n, d); }

// Floor square root; exact test separately.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

inline std::optional<Int> exact_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Square root of a rational when it is an exact square of a rational.
inline std::optional<Rat> exact_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto n = exact_sqrt(Int(numerator(q)));
    auto d = exact_sqrt(Int(denominator(q)));
    if (!n || !d) return std::nullopt;
    return Rat(*n, *d);
}

// Exact division with a divisibility check; the Poly overload lives in
// poly.hpp.  Bareiss elimination relies on these divisions being exact.
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("exact_div by zero");
    Int q = a / b;
    if (q * b != a) throw std::domain_error("exact_div: not divisible");
    return q;
}

inline Rat exact_div(const Rat& a, const Rat& b) {
    if (b == 0) throw std::domain_error("exact_div by zero");
    return a / b;
}

inline std::string to_string(const Rat& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Int& n) { return n.str(); }

} // namespace mukai
