#pragma once

// Exact arithmetic in Z[sqrt(2)], used for the (2 + sqrt(2))^n growth bounds.
// Ceilings are computed with integer square roots only; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include "ramsey/core.hpp"

namespace ramsey {

struct Zsqrt2 {
    bigint a;  // rational part
    bigint b;  // coefficient of sqrt(2)

    friend Zsqrt2 operator+(const Zsqrt2& x, const Zsqrt2& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend Zsqrt2 operator*(const Zsqrt2& x, const Zsqrt2& y) {
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const Zsqrt2& x, const Zsqrt2& y) {
        return x.a == y.a && x.b == y.b;
    }
};

inline Zsqrt2 zsqrt2_pow(Zsqrt2 base, unsigned e) {
    Zsqrt2 acc{1, 0};
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// floor(b * sqrt(2)) for b >= 0, via the integer square root of 2b^2.
inline bigint floor_mult_sqrt2(const bigint& b) {
    if (b < 0) throw InputError("floor_mult_sqrt2: negative coefficient");
    return boost::multiprecision::sqrt(bigint(2 * b * b));
}

// ceil(a + b*sqrt(2)) for a, b >= 0.  For b >= 1 the value is irrational,
// so the ceiling is floor + 1.
inline bigint ceil_of(const Zsqrt2& x) {
    if (x.a < 0 || x.b < 0) throw InputError("ceil_of: negative parts unsupported");
    if (x.b == 0) return x.a;
    return x.a + floor_mult_sqrt2(x.b) + 1;
}

// ceil((2 + sqrt(2))^n).  Note 2/(2 - sqrt(2)) == 2 + sqrt(2) exactly, so the
// same routine serves both growth bounds.
inline bigint ceil_pow_two_plus_sqrt2(unsigned n) {
    return ceil_of(zsqrt2_pow(Zsqrt2{2, 1}, n));
}

inline bigint factorial(unsigned n) {
    bigint f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

// (n!)^(k-1), the clique-vs-half-graph bound shape.
inline bigint factorial_power(unsigned n, unsigned k) {
    if (k < 1) throw InputError("factorial_power: k must be >= 1");
    bigint f = factorial(n);
    bigint acc = 1;
    for (unsigned i = 1; i + 1 <= k; ++i) acc *= f;
    return acc;
}

}  // namespace ramsey
