// saito/rational.hpp — exact integer and rational scalars (GMP-backed).
//
// Invariants maintained everywhere: rationals are in lowest terms with a
// positive denominator; zero is 0/1. mpq_class arithmetic preserves this;
// raw (num, den) construction must go through make_rational().
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace saito {

using Int = mpz_class;
using Rational = mpq_class;

// num/den reduced to lowest terms, den forced positive. Throws on den == 0.
inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline Int numerator(const Rational& r) { return r.get_num(); }
inline Int denominator(const Rational& r) { return r.get_den(); }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// "n" or "n/d", optional leading '-' or '+'. Rejects anything else.
Rational rational_from_string(std::string_view text);

// Lowest-terms form, "n" or "n/d" with d > 1.
std::string rational_to_string(const Rational& r);

Rational rational_pow(const Rational& base, unsigned long exp);

// Exact square root if r is a perfect square of a rational (r >= 0), else nullopt.
std::optional<Rational> rational_sqrt(const Rational& r);

// Integer floor of a/b for mpz (used by rational reconstruction).
Int floor_div(const Int& a, const Int& b);

}  // namespace saito
