#pragma once

#include <optional>
#include <vector>

#include "weylkit/scalar.hpp"

namespace weylkit {

// Dense univariate polynomials over a field scalar, little-endian.
template <typename S>
using UPoly = std::vector<S>;

template <typename S>
void upoly_trim(UPoly<S>& p)
{
    while (!p.empty() && scalar_is_zero(p.back()))
        p.pop_back();
}

template <typename S>
long upoly_deg(const UPoly<S>& p)
{
    for (size_t i = p.size(); i-- > 0;)
        if (!scalar_is_zero(p[i]))
            return static_cast<long>(i);
    return -1;
}

template <typename S>
UPoly<S> upoly_mul(const UPoly<S>& a, const UPoly<S>& b)
{
    if (upoly_deg(a) < 0 || upoly_deg(b) < 0)
        return {};
    UPoly<S> c(a.size() + b.size() - 1, scalar_zero(a[0]));
    for (size_t i = 0; i < a.size(); ++i) {
        if (scalar_is_zero(a[i]))
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    }
    upoly_trim(c);
    return c;
}

template <typename S>
UPoly<S> upoly_pow(const UPoly<S>& a, unsigned e, const S& one)
{
    UPoly<S> acc{one};
    UPoly<S> p = a;
    while (e) {
        if (e & 1)
            acc = upoly_mul(acc, p);
        e >>= 1;
        if (e)
            p = upoly_mul(p, p);
    }
    return acc;
}

template <typename S>
UPoly<S> upoly_derive(const UPoly<S>& a)
{
    if (a.size() <= 1)
        return {};
    UPoly<S> c(a.size() - 1, scalar_zero(a[0]));
    for (size_t i = 1; i < a.size(); ++i)
        c[i - 1] = a[i] * scalar_from_rat(a[0], Rat(static_cast<long>(i)));
    upoly_trim(c);
    return c;
}

template <typename S>
UPoly<S> upoly_scale(UPoly<S> a, const S& f)
{
    for (auto& c : a)
        c = c * f;
    upoly_trim(a);
    return a;
}

template <typename S>
UPoly<S> upoly_sub(UPoly<S> a, const UPoly<S>& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), scalar_zero(b[0]));
    for (size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    upoly_trim(a);
    return a;
}

template <typename S>
bool upoly_eq(const UPoly<S>& a, const UPoly<S>& b)
{
    long da = upoly_deg(a), db = upoly_deg(b);
    if (da != db)
        return false;
    for (long i = 0; i <= da; ++i)
        if (!(a[static_cast<size_t>(i)] == b[static_cast<size_t>(i)]))
            return false;
    return true;
}

// Remainder-style gcd (monic output) for the squarefree machinery.
template <typename S>
UPoly<S> upoly_gcd(UPoly<S> a, UPoly<S> b, const S& one)
{
    upoly_trim(a);
    upoly_trim(b);
    while (!b.empty()) {
        // a mod b
        while (upoly_deg(a) >= upoly_deg(b) && !a.empty()) {
            S f = a.back() * scalar_inverse(b.back());
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[shift + i] -= f * b[i];
            upoly_trim(a);
        }
        std::swap(a, b);
    }
    if (a.empty())
        return a;
    S inv = scalar_inverse(a.back());
    for (auto& c : a)
        c = c * inv;
    (void)one;
    return a;
}

// Number of distinct roots = deg of the squarefree part g / gcd(g, g').
template <typename S>
long distinct_root_count(const UPoly<S>& g, const S& one)
{
    long d = upoly_deg(g);
    if (d <= 0)
        return 0;
    UPoly<S> gg = upoly_gcd(g, upoly_derive(g), one);
    return d - upoly_deg(gg);
}

// The linear differential map of the polynomial lemma:
//   T(H) = H' g - ((z+1)/d) H g'.
template <typename S>
UPoly<S> ode_lemma_map(const UPoly<S>& h, const UPoly<S>& g, const Rat& mu)
{
    if (h.empty())
        return {};
    S muc = scalar_from_rat(h[0], mu);
    return upoly_sub(upoly_mul(upoly_derive(h), g), upoly_scale(upoly_mul(h, upoly_derive(g)), muc));
}

template <typename S>
struct OdeLemmaResult {
    bool solvable = false;
    bool unique = true; // false when the homogeneous kernel is nontrivial (d = 1)
    UPoly<S> h;
};

// Solve c g^A = H' g - ((z+1)/d) H g' for polynomial H, with the lemma's
// parameter relation z = (A-1) d. The coefficient system is triangular
// from the top except at the exceptional degree t* = l (z+1)/d, where the
// leading coefficient (t - (z+1)l'/d...) vanishes. That degree is carried
// as a superposition parameter and fixed by the leftover low equations;
// when T itself kills the t*-direction (only d = 1) the solution is a
// one-parameter family and the representative with h_{t*} = 0 is returned.
template <typename S>
OdeLemmaResult<S> poly_ode_solve(const UPoly<S>& g, long a_exp, long d, long z, const S& c)
{
    if (d < 1 || a_exp < 1)
        throw std::invalid_argument("poly_ode_solve: need d >= 1, A >= 1");
    if (z != (a_exp - 1) * d)
        throw std::invalid_argument("poly_ode_solve: parameter relation z = (A-1) d violated");
    long l = upoly_deg(g);
    if (l < 0)
        throw std::invalid_argument("poly_ode_solve: zero polynomial");
    if (scalar_is_zero(c))
        throw std::invalid_argument("poly_ode_solve: zero right-hand scale");

    const S zero = scalar_zero(c), one = scalar_one(c);
    Rat mu(z + 1, d);
    bool tstar_integral = ((z + 1) * l) % d == 0;
    long tstar = tstar_integral ? ((z + 1) * l) / d : -1;

    long dmax = l * (a_exp - 1) + 1;
    if (tstar_integral)
        dmax = std::max(dmax, tstar);

    UPoly<S> rhs = upoly_scale(upoly_pow(g, static_cast<unsigned>(a_exp), one), c);
    const S glead = g[static_cast<size_t>(l)];

    auto descend = [&](const UPoly<S>& target, const S& pinned) {
        UPoly<S> h(static_cast<size_t>(dmax) + 1, zero);
        if (tstar_integral && tstar <= dmax)
            h[static_cast<size_t>(tstar)] = pinned;
        for (long t = dmax; t >= 0; --t) {
            if (t == tstar)
                continue;
            long eq = t + l - 1;
            if (eq < 0)
                continue;
            UPoly<S> th = ode_lemma_map(h, g, mu);
            S cur = eq < static_cast<long>(th.size()) ? th[static_cast<size_t>(eq)] : zero;
            S want = eq < static_cast<long>(target.size()) ? target[static_cast<size_t>(eq)] : zero;
            S lead = glead * scalar_from_rat(c, Rat(t) - mu * Rat(l));
            h[static_cast<size_t>(t)] = (want - cur) * scalar_inverse(lead);
        }
        return h;
    };

    OdeLemmaResult<S> out;
    UPoly<S> h = descend(rhs, zero);
    if (tstar_integral && tstar >= 0 && tstar <= dmax) {
        UPoly<S> res0 = upoly_sub(ode_lemma_map(h, g, mu), rhs);
        UPoly<S> kdir = descend(UPoly<S>{}, one);
        UPoly<S> resk = ode_lemma_map(kdir, g, mu);
        if (upoly_deg(resk) < 0) {
            // kdir spans the genuine kernel: family of solutions
            out.unique = false;
            if (upoly_deg(res0) < 0) {
                out.solvable = true;
                upoly_trim(h);
                out.h = std::move(h);
            }
            return out;
        }
        long pos = upoly_deg(resk);
        S r0 = static_cast<size_t>(pos) < res0.size() ? res0[static_cast<size_t>(pos)] : zero;
        S s = (zero - r0) * scalar_inverse(resk[static_cast<size_t>(pos)]);
        for (size_t i = 0; i < kdir.size() && i < h.size(); ++i)
            h[i] += s * kdir[i];
    }
    if (upoly_eq(ode_lemma_map(h, g, mu), rhs)) {
        out.solvable = true;
        upoly_trim(h);
        out.h = std::move(h);
    }
    return out;
}

} // namespace weylkit
