#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace tatedr {

/// Exact rational numbers (the residue field k = Q). GMP-backed; always stored
/// in canonical form.
using Rational = mpq_class;

inline Rational rationalFromLong(long n) { return Rational(n); }

inline Rational rationalFromParts(long num, unsigned long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool isZero(const Rational& r) { return sgn(r) == 0; }

/// binom(n, k) as an exact rational (characteristic zero: these are the Leibniz
/// coefficients and are always units).
inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class v;
    mpz_bin_uiui(v.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(v);
}

/// n * (n-1) * ... * (n-k+1); used by the d^b x^a commutation formula.
inline Rational fallingFactorial(long n, long k) {
    Rational acc(1);
    for (long i = 0; i < k; ++i) acc *= Rational(n - i);
    return acc;
}

inline std::string toString(const Rational& r) { return r.get_str(); }

}  // namespace tatedr
