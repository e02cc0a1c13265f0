#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "weylkit/scalar.hpp"
#include "weylkit/series.hpp"

namespace weylkit {

// Element of the first Weyl algebra K[x][d] in normal order: a sparse map
// (i, j) -> coefficient of x^i d^j. No zero coefficients are stored.
template <typename S>
class WeylOp {
public:
    using Key = std::pair<long, long>;
    using Map = std::map<Key, S>;

    WeylOp() = default;

    static WeylOp monomial(long i, long j, const S& c)
    {
        if (i < 0 || j < 0)
            throw std::invalid_argument("WeylOp: negative exponent");
        WeylOp p;
        if (!scalar_is_zero(c))
            p.m_.emplace(Key{i, j}, c);
        return p;
    }

    static WeylOp var_x(const S& one) { return monomial(1, 0, one); }
    static WeylOp var_d(const S& one) { return monomial(0, 1, one); }
    static WeylOp constant(const S& c) { return monomial(0, 0, c); }

    const Map& terms() const { return m_; }
    bool is_zero() const { return m_.empty(); }
    size_t size() const { return m_.size(); }

    void add_term(long i, long j, const S& c)
    {
        if (i < 0 || j < 0)
            throw std::invalid_argument("WeylOp: negative exponent");
        if (scalar_is_zero(c))
            return;
        auto it = m_.find({i, j});
        if (it == m_.end()) {
            m_.emplace(Key{i, j}, c);
        } else {
            it->second += c;
            if (scalar_is_zero(it->second))
                m_.erase(it);
        }
    }

    friend WeylOp operator+(const WeylOp& a, const WeylOp& b)
    {
        WeylOp r = a;
        for (const auto& [k, c] : b.m_)
            r.add_term(k.first, k.second, c);
        return r;
    }

    friend WeylOp operator-(const WeylOp& a, const WeylOp& b)
    {
        WeylOp r = a;
        for (const auto& [k, c] : b.m_)
            r.add_term(k.first, k.second, scalar_zero(c) - c);
        return r;
    }

    WeylOp operator-() const
    {
        WeylOp r;
        for (const auto& [k, c] : m_)
            r.m_.emplace(k, scalar_zero(c) - c);
        return r;
    }

    WeylOp scale(const S& f) const
    {
        WeylOp r;
        if (scalar_is_zero(f))
            return r;
        for (const auto& [k, c] : m_) {
            S v = c * f;
            if (!scalar_is_zero(v))
                r.m_.emplace(k, v);
        }
        return r;
    }

    friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.m_ == b.m_; }
    friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a.m_ == b.m_); }

private:
    Map m_;
};

// Normally ordered product. d^j x^i = sum_t C(j,t) (i)_t x^{i-t} d^{j-t}.
template <typename S>
WeylOp<S> weyl_mul(const WeylOp<S>& a, const WeylOp<S>& b)
{
    WeylOp<S> r;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            long i = ka.first, j = ka.second;
            long i2 = kb.first, j2 = kb.second;
            S base = ca * cb;
            long tmax = std::min(j, i2);
            for (long t = 0; t <= tmax; ++t) {
                BigInt f = binomial_z(j, t) * falling_factorial(i2, t);
                if (f == 0)
                    continue;
                r.add_term(i + i2 - t, j + j2 - t, base * scalar_from_rat(base, Rat(f)));
            }
        }
    }
    return r;
}

template <typename S>
WeylOp<S> weyl_pow(const WeylOp<S>& a, unsigned e, const S& one)
{
    WeylOp<S> acc = WeylOp<S>::constant(one);
    WeylOp<S> p = a;
    while (e) {
        if (e & 1)
            acc = weyl_mul(acc, p);
        e >>= 1;
        if (e)
            p = weyl_mul(p, p);
    }
    return acc;
}

template <typename S>
WeylOp<S> commutator(const WeylOp<S>& p, const WeylOp<S>& q)
{
    return weyl_mul(p, q) - weyl_mul(q, p);
}

// Exact action on the monomial x^m: result is a polynomial in x.
template <typename S>
std::map<long, S> act_monomial(const WeylOp<S>& p, long m)
{
    std::map<long, S> out;
    for (const auto& [k, c] : p.terms()) {
        long i = k.first, j = k.second;
        if (j > m)
            continue;
        S v = c * scalar_from_rat(c, Rat(falling_factorial(m, j)));
        if (scalar_is_zero(v))
            continue;
        auto [it, fresh] = out.emplace(i + m - j, v);
        if (!fresh) {
            it->second += v;
            if (scalar_is_zero(it->second))
                out.erase(it);
        }
    }
    return out;
}

struct WeightTriple {
    long ord;   // v_{0,1}: degree in d
    long ord_x; // v_{1,0}: degree in x
    long bord;  // bold ord = max(j - i) over the support
};

template <typename S>
WeightTriple weights(const WeylOp<S>& p)
{
    if (p.is_zero())
        throw std::domain_error("weights: zero operator");
    WeightTriple w{0, 0, 0};
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        long i = k.first, j = k.second;
        if (first) {
            w = {j, i, j - i};
            first = false;
        } else {
            w.ord = std::max(w.ord, j);
            w.ord_x = std::max(w.ord_x, i);
            w.bord = std::max(w.bord, j - i);
        }
    }
    return w;
}

template <typename S>
long ord(const WeylOp<S>& p)
{
    return weights(p).ord;
}

// Highest d-coefficient HT(P) as a polynomial in x (map x-degree -> coeff).
template <typename S>
struct LeadingData {
    std::map<long, S> ht;
    long ord = 0;
    bool monic = false;
    bool elliptic = false; // HT is a constant
};

template <typename S>
LeadingData<S> leading_data(const WeylOp<S>& p)
{
    if (p.is_zero())
        throw std::domain_error("leading_data: zero operator");
    LeadingData<S> r;
    r.ord = weights(p).ord;
    for (const auto& [k, c] : p.terms())
        if (k.second == r.ord)
            r.ht.emplace(k.first, c);
    r.elliptic = r.ht.size() == 1 && r.ht.begin()->first == 0;
    r.monic = r.elliptic && r.ht.begin()->second == scalar_one(r.ht.begin()->second);
    return r;
}

// Algebra endomorphism of A_1 given by the images of x and d. `verified`
// records that [img_d, img_x] = 1 has been checked.
template <typename S>
struct Endo {
    WeylOp<S> img_x;
    WeylOp<S> img_d;
    bool verified = false;
};

template <typename S>
Endo<S> make_endo(WeylOp<S> img_x, WeylOp<S> img_d, const S& one)
{
    Endo<S> e{std::move(img_x), std::move(img_d), false};
    e.verified = commutator(e.img_d, e.img_x) == WeylOp<S>::constant(one);
    return e;
}

template <typename S>
Endo<S> identity_endo(const S& one)
{
    return Endo<S>{WeylOp<S>::var_x(one), WeylOp<S>::var_d(one), true};
}

// Substitute the images into the normally ordered form of p.
template <typename S>
WeylOp<S> apply_endo(const Endo<S>& e, const WeylOp<S>& p)
{
    if (p.is_zero())
        return p;
    const S one = scalar_one(p.terms().begin()->second);
    // Cache powers of the images; exponents are typically tiny but repeated.
    std::vector<WeylOp<S>> xp{WeylOp<S>::constant(one)};
    std::vector<WeylOp<S>> dp{WeylOp<S>::constant(one)};
    auto power = [](std::vector<WeylOp<S>>& cache, const WeylOp<S>& base, long e_) -> const WeylOp<S>& {
        while (static_cast<long>(cache.size()) <= e_)
            cache.push_back(weyl_mul(cache.back(), base));
        return cache[static_cast<size_t>(e_)];
    };
    WeylOp<S> r;
    for (const auto& [k, c] : p.terms()) {
        WeylOp<S> t = weyl_mul(power(xp, e.img_x, k.first), power(dp, e.img_d, k.second));
        r = r + t.scale(c);
    }
    return r;
}

template <typename S>
Endo<S> compose_endo(const Endo<S>& e1, const Endo<S>& e2)
{
    Endo<S> r;
    r.img_x = apply_endo(e1, e2.img_x);
    r.img_d = apply_endo(e1, e2.img_d);
    r.verified = e1.verified && e2.verified;
    return r;
}

// Tame generators: Phi_{n,l}: x -> x + l d^n; Phi'_{n,l}: d -> d + l x^n;
// linear Phi_{a,b,c,d}: d -> a d + b x, x -> c d + d x with ad - bc = 1.
template <typename S>
Endo<S> tame_phi(long n, const S& lambda)
{
    if (n < 0)
        throw std::invalid_argument("tame_phi: n must be >= 0");
    const S one = scalar_one(lambda);
    Endo<S> e;
    e.img_x = WeylOp<S>::var_x(one) + WeylOp<S>::monomial(0, n, lambda);
    e.img_d = WeylOp<S>::var_d(one);
    e.verified = true;
    return e;
}

template <typename S>
Endo<S> tame_phi_prime(long n, const S& lambda)
{
    if (n < 0)
        throw std::invalid_argument("tame_phi_prime: n must be >= 0");
    const S one = scalar_one(lambda);
    Endo<S> e;
    e.img_x = WeylOp<S>::var_x(one);
    e.img_d = WeylOp<S>::var_d(one) + WeylOp<S>::monomial(n, 0, lambda);
    e.verified = true;
    return e;
}

template <typename S>
Endo<S> tame_linear(const S& a, const S& b, const S& c, const S& d)
{
    if (!(a * d - b * c == scalar_one(a)))
        throw std::invalid_argument("tame_linear: ad - bc must equal 1");
    Endo<S> e;
    e.img_d = WeylOp<S>::monomial(0, 1, a) + WeylOp<S>::monomial(1, 0, b);
    e.img_x = WeylOp<S>::monomial(0, 1, c) + WeylOp<S>::monomial(1, 0, d);
    e.verified = true;
    return e;
}

// Differential operator with truncated power-series coefficients:
// sum_{i<=n} a_i(x) d^i, the ring D_1 = K[[x]][d] at finite precision.
// The d-degree is exact; only the x-series are truncated.
template <typename S>
class D1Op {
public:
    explicit D1Op(std::vector<TruncSeries<S>> coeffs) : a_(std::move(coeffs))
    {
        if (a_.empty())
            throw std::invalid_argument("D1Op: empty coefficient list");
    }

    static D1Op zero(const S& sample, size_t precision)
    {
        return D1Op({TruncSeries<S>::constant(scalar_zero(sample), precision)});
    }

    static D1Op from_weyl(const WeylOp<S>& p, const S& sample, size_t precision)
    {
        long n = p.is_zero() ? 0 : weights(p).ord;
        std::vector<TruncSeries<S>> cs;
        for (long j = 0; j <= n; ++j) {
            std::vector<S> c(precision, scalar_zero(sample));
            for (const auto& [k, v] : p.terms())
                if (k.second == j && static_cast<size_t>(k.first) < precision)
                    c[static_cast<size_t>(k.first)] = v;
            cs.emplace_back(std::move(c));
        }
        return D1Op(std::move(cs));
    }

    size_t dsize() const { return a_.size(); }
    const TruncSeries<S>& coeff(size_t j) const { return a_.at(j); }
    const std::vector<TruncSeries<S>>& coeffs() const { return a_; }

    size_t precision() const
    {
        size_t m = a_[0].precision();
        for (const auto& s : a_)
            m = std::min(m, s.precision());
        return m;
    }

    bool is_zero() const
    {
        for (const auto& s : a_)
            if (!s.is_zero())
                return false;
        return true;
    }

    // Degree in d (index of the last nonzero coefficient series).
    long ord() const
    {
        for (size_t j = a_.size(); j-- > 0;)
            if (!a_[j].is_zero())
                return static_cast<long>(j);
        throw std::domain_error("D1Op::ord: zero operator");
    }

    const TruncSeries<S>& ht() const { return a_.at(static_cast<size_t>(ord())); }

    bool monic() const
    {
        const auto& h = ht();
        if (!(h[0] == scalar_one(h[0])))
            return false;
        for (size_t i = 1; i < h.precision(); ++i)
            if (!scalar_is_zero(h[i]))
                return false;
        return true;
    }

    friend D1Op operator+(const D1Op& p, const D1Op& q)
    {
        size_t n = std::max(p.a_.size(), q.a_.size());
        size_t prec = std::min(p.precision(), q.precision());
        std::vector<TruncSeries<S>> c;
        const S z = scalar_zero(p.a_[0].sample());
        for (size_t j = 0; j < n; ++j) {
            TruncSeries<S> s = TruncSeries<S>::constant(z, prec);
            if (j < p.a_.size())
                s = s + p.a_[j];
            if (j < q.a_.size())
                s = s + q.a_[j];
            c.push_back(s.truncate(prec));
        }
        return D1Op(std::move(c));
    }

    friend D1Op operator-(const D1Op& p, const D1Op& q) { return p + q.scale(scalar_from_rat(q.a_[0].sample(), Rat(-1))); }

    D1Op scale(const S& f) const
    {
        std::vector<TruncSeries<S>> c;
        for (const auto& s : a_)
            c.push_back(s.scale(f));
        return D1Op(std::move(c));
    }

    friend D1Op operator*(const D1Op& p, const D1Op& q)
    {
        size_t prec = std::min(p.precision(), q.precision());
        size_t n = p.a_.size() + q.a_.size() - 1;
        const S z = scalar_zero(p.a_[0].sample());
        std::vector<TruncSeries<S>> c(n, TruncSeries<S>::constant(z, prec));
        for (size_t i = 0; i < p.a_.size(); ++i) {
            if (p.a_[i].is_zero())
                continue;
            // a d^i * b d^j = sum_t C(i,t) a b^{(t)} d^{i+j-t}
            for (size_t j = 0; j < q.a_.size(); ++j) {
                TruncSeries<S> b = q.a_[j].truncate(prec);
                for (size_t t = 0; t <= i; ++t) {
                    if (t > 0)
                        b = b.derive(); // throws on precision exhaustion
                    BigInt f = binomial_z(static_cast<long>(i), static_cast<long>(t));
                    TruncSeries<S> term = (p.a_[i].truncate(b.precision()) * b)
                                              .scale(scalar_from_rat(z, Rat(f)));
                    size_t idx = i + j - t;
                    c[idx] = (c[idx] + term);
                }
            }
        }
        // Align precisions to the minimum reached.
        size_t m = prec;
        for (const auto& s : c)
            m = std::min(m, s.precision());
        for (auto& s : c)
            s = s.truncate(m);
        return D1Op(std::move(c));
    }

private:
    std::vector<TruncSeries<S>> a_;
};

using WeylOpQ = WeylOp<Rat>;
using EndoQ = Endo<Rat>;
using D1OpQ = D1Op<Rat>;

} // namespace weylkit
