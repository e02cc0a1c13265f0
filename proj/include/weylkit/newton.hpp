#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "weylkit/weyl.hpp"

namespace weylkit {

// Commutative bivariate polynomial in x, y with the same sparse layout as
// WeylOp; the Newton-polygon side of the dictionary x^i d^j <-> x^i y^j.
template <typename S>
class BivarPoly {
public:
    using Key = std::pair<long, long>;
    using Map = std::map<Key, S>;

    BivarPoly() = default;

    static BivarPoly monomial(long i, long j, const S& c)
    {
        BivarPoly p;
        if (!scalar_is_zero(c))
            p.m_.emplace(Key{i, j}, c);
        return p;
    }

    template <typename T>
    static BivarPoly from_weyl(const WeylOp<T>& w)
    {
        BivarPoly p;
        for (const auto& [k, c] : w.terms())
            p.m_.emplace(k, c);
        return p;
    }

    const Map& terms() const { return m_; }
    bool is_zero() const { return m_.empty(); }

    void add_term(long i, long j, const S& c)
    {
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

    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b)
    {
        BivarPoly r = a;
        for (const auto& [k, c] : b.m_)
            r.add_term(k.first, k.second, c);
        return r;
    }

    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b)
    {
        BivarPoly r = a;
        for (const auto& [k, c] : b.m_)
            r.add_term(k.first, k.second, scalar_zero(c) - c);
        return r;
    }

    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b)
    {
        BivarPoly r;
        for (const auto& [ka, ca] : a.m_)
            for (const auto& [kb, cb] : b.m_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }

    BivarPoly scale(const S& f) const
    {
        BivarPoly r;
        if (scalar_is_zero(f))
            return r;
        for (const auto& [k, c] : m_)
            r.m_.emplace(k, c * f);
        return r;
    }

    BivarPoly pow(unsigned e) const
    {
        if (m_.empty())
            return e == 0 ? throw std::domain_error("BivarPoly::pow: 0^0 of zero polynomial") : BivarPoly();
        BivarPoly acc = monomial(0, 0, scalar_one(m_.begin()->second));
        BivarPoly p = *this;
        while (e) {
            if (e & 1)
                acc = acc * p;
            e >>= 1;
            if (e)
                p = p * p;
        }
        return acc;
    }

    BivarPoly dx() const
    {
        BivarPoly r;
        for (const auto& [k, c] : m_)
            if (k.first > 0)
                r.add_term(k.first - 1, k.second, c * scalar_from_rat(c, Rat(k.first)));
        return r;
    }

    BivarPoly dy() const
    {
        BivarPoly r;
        for (const auto& [k, c] : m_)
            if (k.second > 0)
                r.add_term(k.first, k.second - 1, c * scalar_from_rat(c, Rat(k.second)));
        return r;
    }

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.m_ == b.m_; }
    friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a.m_ == b.m_); }

private:
    Map m_;
};

using BivarQ = BivarPoly<Rat>;

// Weight (sigma, rho) with exact rational entries.
struct Weight {
    Rat sigma;
    Rat rho;
};

using LatticePoint = std::pair<long, long>;

template <typename S>
std::set<LatticePoint> support(const BivarPoly<S>& f)
{
    std::set<LatticePoint> e;
    for (const auto& [k, c] : f.terms())
        e.insert(k);
    return e;
}

// v_{sigma,rho}(f) and the set of attaining points E(f, sigma, rho).
template <typename S>
std::pair<Rat, std::set<LatticePoint>> weight_degree(const BivarPoly<S>& f, const Weight& w)
{
    if (f.is_zero())
        throw std::domain_error("weight_degree: zero polynomial");
    Rat best;
    std::set<LatticePoint> top;
    bool first = true;
    for (const auto& [k, c] : f.terms()) {
        Rat v = w.sigma * Rat(k.first) + w.rho * Rat(k.second);
        if (first || v > best) {
            best = v;
            top.clear();
            top.insert(k);
            first = false;
        } else if (v == best) {
            top.insert(k);
        }
    }
    return {best, top};
}

template <typename S>
Rat weight_value(const BivarPoly<S>& f, const Weight& w)
{
    return weight_degree(f, w).first;
}

// The (sigma,rho)-homogeneous polynomial associated to f.
template <typename S>
BivarPoly<S> top_part(const BivarPoly<S>& f, const Weight& w)
{
    auto [v, top] = weight_degree(f, w);
    (void)v;
    BivarPoly<S> r;
    for (const auto& [k, c] : f.terms())
        if (top.count(k))
            r.add_term(k.first, k.second, c);
    return r;
}

template <typename S>
std::pair<Rat, std::set<LatticePoint>> weight_degree(const WeylOp<S>& f, const Weight& w)
{
    return weight_degree(BivarPoly<S>::from_weyl(f), w);
}

template <typename S>
BivarPoly<S> top_part(const WeylOp<S>& f, const Weight& w)
{
    return top_part(BivarPoly<S>::from_weyl(f), w);
}

// {f,g} = f_x g_y - f_y g_x
template <typename S>
BivarPoly<S> poisson(const BivarPoly<S>& f, const BivarPoly<S>& g)
{
    return f.dx() * g.dy() - f.dy() * g.dx();
}

// Convex hull (monotone chain) of the support; small inputs, long long is
// plenty for the cross products.
std::vector<LatticePoint> convex_hull(std::set<LatticePoint> pts);

struct PolygonData {
    std::set<LatticePoint> points;
    std::vector<LatticePoint> hull;
};

template <typename S>
PolygonData polygon_data(const BivarPoly<S>& f)
{
    PolygonData d;
    d.points = support(f);
    d.hull = convex_hull(d.points);
    return d;
}

// Dixmier's commutator split at a positive weight: [P,Q] = T + U with T the
// homogeneous part at the predicted level v + w - sigma - rho.
template <typename S>
struct DixmierReport {
    WeylOp<S> t;
    WeylOp<S> u;
    Rat v, w, level;
    bool product_value_law = false;  // v_{sr}(PQ) = v + w
    bool product_top_law = false;    // f_{sr}(PQ) = f1 g1
    bool assoc_is_poisson = false;   // assoc poly of [P,Q] equals {g1, f1}
    bool t_zero = false;
    bool poisson_zero = false;
};

template <typename S>
DixmierReport<S> dixmier_split(const WeylOp<S>& p, const WeylOp<S>& q, const Weight& w)
{
    if (w.sigma + w.rho <= 0)
        throw std::invalid_argument("dixmier_split: requires sigma + rho > 0");
    if (p.is_zero() || q.is_zero())
        throw std::domain_error("dixmier_split: zero operator");
    DixmierReport<S> rep;
    rep.v = weight_value(BivarPoly<S>::from_weyl(p), w);
    rep.w = weight_value(BivarPoly<S>::from_weyl(q), w);
    rep.level = rep.v + rep.w - w.sigma - w.rho;

    WeylOp<S> c = commutator(p, q);
    WeylOp<S> t, u;
    for (const auto& [k, coef] : c.terms()) {
        Rat val = w.sigma * Rat(k.first) + w.rho * Rat(k.second);
        if (val > rep.level)
            throw std::logic_error("dixmier_split: commutator exceeds predicted level");
        if (val == rep.level)
            t.add_term(k.first, k.second, coef);
        else
            u.add_term(k.first, k.second, coef);
    }
    rep.t = t;
    rep.u = u;
    rep.t_zero = t.is_zero();

    BivarPoly<S> f1 = top_part(p, w), g1 = top_part(q, w);
    BivarPoly<S> br = poisson(g1, f1); // sign fixed once by the case P = d, Q = x
    rep.poisson_zero = br.is_zero();
    rep.assoc_is_poisson = BivarPoly<S>::from_weyl(t) == br;

    WeylOp<S> pq = weyl_mul(p, q);
    rep.product_value_law = !pq.is_zero() && weight_value(BivarPoly<S>::from_weyl(pq), w) == rep.v + rep.w;
    rep.product_top_law = rep.product_value_law && top_part(pq, w) == f1 * g1;
    return rep;
}

// g1^v proportional to f1^w?
template <typename S>
bool proportional_tops(const BivarPoly<S>& f1, const BivarPoly<S>& g1, long v, long w)
{
    if (v < 0 || w < 0)
        throw std::invalid_argument("proportional_tops: negative exponents");
    BivarPoly<S> gv = g1.pow(static_cast<unsigned>(v));
    BivarPoly<S> fw = f1.pow(static_cast<unsigned>(w));
    if (gv.is_zero() || fw.is_zero())
        return gv.is_zero() && fw.is_zero();
    if (support(gv) != support(fw))
        return false;
    const auto& [k0, c0] = *fw.terms().begin();
    S ratio = gv.terms().begin()->second * scalar_inverse(c0);
    return gv == fw.scale(ratio);
}

// Shape data of a subrectangular pair per the definitions of section 3.
struct SubrectData {
    LatticePoint hm_p; // (l n, d n)
    LatticePoint hm_q; // (l m, d m)
    long d = 0, l = 0, n = 0, m = 0;
    long d2 = 0; // EssGCD = d / gcd(l, d)
    Rat rate;    // epsilon = n / m
};

// An operator is of subrectangular type iff (v_{1,0}, v_{0,1}) itself
// carries a nonzero coefficient and both coordinates are >= 1.
template <typename S>
bool is_subrectangular(const WeylOp<S>& p)
{
    if (p.is_zero())
        return false;
    WeightTriple w = weights(p);
    if (w.ord_x < 1 || w.ord < 1)
        return false;
    return p.terms().count({w.ord_x, w.ord}) > 0;
}

template <typename S>
std::optional<LatticePoint> highest_monomial(const WeylOp<S>& p)
{
    if (!is_subrectangular(p))
        return std::nullopt;
    WeightTriple w = weights(p);
    return LatticePoint{w.ord_x, w.ord};
}

template <typename S>
std::optional<SubrectData> subrect_data(const WeylOp<S>& p, const WeylOp<S>& q)
{
    auto hp = highest_monomial(p);
    auto hq = highest_monomial(q);
    if (!hp || !hq)
        return std::nullopt;
    auto [lp, kp] = *hp;
    auto [lq, kq] = *hq;
    if (lp * kq != lq * kp)
        return std::nullopt; // highest monomials not proportional
    SubrectData s;
    s.hm_p = *hp;
    s.hm_q = *hq;
    s.d = gcd_long(kp, kq);
    s.l = gcd_long(lp, lq);
    s.n = kp / s.d;
    s.m = kq / s.d;
    if (s.l * s.n != lp || s.l * s.m != lq)
        return std::nullopt; // x-orders not aligned with the d-order split
    s.d2 = s.d / gcd_long(s.l, s.d);
    s.rate = Rat(s.n, s.m);
    return s;
}

// Corner points en/st of the (1,0)- and (0,1)-top lines.
struct Corners {
    LatticePoint en_10, st_10, en_01, st_01;
};

template <typename S>
Corners corners(const WeylOp<S>& p)
{
    if (p.is_zero())
        throw std::domain_error("corners: zero operator");
    WeightTriple w = weights(p);
    long ymin = -1, ymax = -1, xmin = -1, xmax = -1;
    for (const auto& [k, c] : p.terms()) {
        if (k.first == w.ord_x) {
            ymax = ymax < 0 ? k.second : std::max(ymax, k.second);
            ymin = ymin < 0 ? k.second : std::min(ymin, k.second);
        }
        if (k.second == w.ord) {
            xmax = xmax < 0 ? k.first : std::max(xmax, k.first);
            xmin = xmin < 0 ? k.first : std::min(xmin, k.first);
        }
    }
    Corners c;
    c.en_10 = {w.ord_x, ymax};
    c.st_10 = {w.ord_x, ymin};
    c.en_01 = {xmin, w.ord};
    c.st_01 = {xmax, w.ord};
    return c;
}

} // namespace weylkit
