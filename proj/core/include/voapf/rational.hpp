#ifndef VOAPF_RATIONAL_HPP
#define VOAPF_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "voapf/errors.hpp"

namespace voapf {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals.
// mpq_class keeps values canonical (lowest terms, positive denominator),
// which is exactly the representation contract for coefficients.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// binomial(n, k) for integer n (possibly negative), k >= 0
inline Rat binomial(const Rat& n, unsigned k) {
    Rat acc = 1;
    for (unsigned t = 0; t < k; ++t) {
        acc *= (n - int(t));
        acc /= int(t + 1);
    }
    return acc;
}

inline Int factorial(unsigned n) {
    Int acc = 1;
    for (unsigned t = 2; t <= n; ++t) acc *= t;
    return acc;
}

// x^e for integer e; e < 0 requires x != 0
inline Rat pow_rat(const Rat& x, long e) {
    if (e == 0) return 1;
    if (sgn(x) == 0) {
        if (e < 0) throw pole_error("0 raised to a negative power");
        return 0;
    }
    Rat base = e > 0 ? x : Rat(1) / x;
    unsigned long n = e > 0 ? (unsigned long)e : (unsigned long)(-e);
    Rat acc = 1;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw domain_error("cannot parse rational: " + s);
    r.canonicalize();
    return r;
}

// |a|^2 comparisons are used instead of |a| wherever possible, so most of
// the code never leaves Q. This helper decides whether a non-negative
// rational is a perfect square, and produces the exact root when it is.
bool sqrt_exact(const Rat& x, Rat& root);

inline bool sqrt_exact(const Rat& x, Rat& root, bool) { return sqrt_exact(x, root); }

} // namespace voapf

#endif
