#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace weylkit {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational numbers. cpp_rational keeps the canonical form we rely on:
// denominator > 0 and gcd(num, den) = 1 after every operation.
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline bool is_zero(const Rat& r) { return r.is_zero(); }
inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Construct n/d with either sign of d (the backend requires d > 0).
inline Rat make_rat(BigInt n, BigInt d)
{
    if (d == 0)
        throw std::domain_error("make_rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(n, d);
}

inline Rat rat_pow(const Rat& base, long e)
{
    if (e == 0)
        return Rat(1);
    if (e < 0) {
        if (base.is_zero())
            throw std::domain_error("rat_pow: zero to a negative power");
        return rat_pow(make_rat(denominator(base), numerator(base)), -e);
    }
    Rat acc(1), p = base;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1)
            acc *= p;
        n >>= 1;
        if (n)
            p *= p;
    }
    return acc;
}

// Floor of the n-th root of a non-negative integer, by bisection.
inline BigInt integer_nth_root_floor(const BigInt& a, unsigned n)
{
    if (a < 0)
        throw std::domain_error("integer_nth_root_floor: negative radicand");
    if (n == 0)
        throw std::domain_error("integer_nth_root_floor: zeroth root");
    if (a == 0 || a == 1 || n == 1)
        return a;
    BigInt lo = 1, hi = a;
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) / 2;
        BigInt p = boost::multiprecision::pow(mid, n);
        if (p <= a)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// Exact n-th root in Q, when it exists. Even roots of positive rationals
// return the positive root; even roots of negatives do not exist.
inline std::optional<Rat> rat_nth_root(const Rat& r, unsigned n)
{
    if (n == 0)
        return std::nullopt;
    if (n == 1)
        return r;
    if (r.is_zero())
        return Rat(0);
    bool neg = r < 0;
    if (neg && n % 2 == 0)
        return std::nullopt;
    BigInt an = boost::multiprecision::abs(numerator(r));
    BigInt ad = denominator(r);
    BigInt rn = integer_nth_root_floor(an, n);
    BigInt rd = integer_nth_root_floor(ad, n);
    if (boost::multiprecision::pow(rn, n) != an || boost::multiprecision::pow(rd, n) != ad)
        return std::nullopt;
    Rat root(rn, rd);
    return neg ? -root : root;
}

// Falling factorial a(a-1)...(a-t+1) for integer a >= 0.
inline BigInt falling_factorial(long a, long t)
{
    if (t < 0)
        throw std::domain_error("falling_factorial: negative length");
    if (t > a)
        return 0;
    BigInt acc = 1;
    for (long s = 0; s < t; ++s)
        acc *= BigInt(a - s);
    return acc;
}

inline BigInt factorial(long n)
{
    if (n < 0)
        throw std::domain_error("factorial: negative argument");
    return falling_factorial(n, n);
}

// Generalized binomial coefficient for integer (possibly negative) upper
// index: s(s-1)...(s-t+1)/t!. Always an integer.
inline BigInt binomial_z(long s, long t)
{
    if (t < 0)
        return 0;
    BigInt acc = 1;
    for (long u = 0; u < t; ++u)
        acc *= BigInt(s - u);
    return acc / factorial(t);
}

inline long gcd_long(long a, long b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace weylkit
