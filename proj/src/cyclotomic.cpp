#include "weylkit/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace weylkit {

namespace {

// Dense univariate polynomials over Q, used only to build Phi_k and for
// residue arithmetic. Leading coefficient is kept nonzero.
using QPoly = std::vector<Rat>;

void trim(QPoly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

// Division with remainder by a monic-or-unit-leading divisor.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    if (b.empty())
        throw std::domain_error("polynomial division by zero");
    QPoly q;
    if (a.size() >= b.size())
        q.assign(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size()) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= f * b[i];
        trim(a);
        if (!a.empty() && a.size() >= b.size() && a.size() - b.size() == shift)
            a.back() = Rat(0), trim(a); // guard against nonzero residue at the same slot
    }
    return {q, a};
}

QPoly cyclotomic_poly(unsigned k, std::map<unsigned, QPoly>& cache)
{
    auto it = cache.find(k);
    if (it != cache.end())
        return it->second;
    // x^k - 1 divided by the product of Phi_d over proper divisors d of k.
    QPoly num(k + 1, Rat(0));
    num[0] = Rat(-1);
    num[k] = Rat(1);
    QPoly den{Rat(1)};
    for (unsigned d = 1; d < k; ++d)
        if (k % d == 0)
            den = mul(den, cyclotomic_poly(d, cache));
    auto [q, r] = divmod(num, den);
    if (!r.empty())
        throw std::logic_error("cyclotomic_poly: non-exact division");
    cache.emplace(k, q);
    return q;
}

QPoly& poly_mod(QPoly& a, const QPoly& m)
{
    while (a.size() >= m.size()) {
        Rat f = a.back() / m.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[shift + i] -= f * m[i];
        trim(a);
    }
    return a;
}

} // namespace

CycField::CycField(unsigned k) : k_(k)
{
    if (k == 0)
        throw std::invalid_argument("CycField: conductor must be positive");
    std::map<unsigned, QPoly> cache;
    phi_ = cyclotomic_poly(k, cache);
}

CycFieldPtr CycField::get(unsigned k)
{
    static std::mutex mtx;
    static std::map<unsigned, CycFieldPtr> registry;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find(k);
    if (it != registry.end())
        return it->second;
    CycFieldPtr f(new CycField(k));
    registry.emplace(k, f);
    return f;
}

CycElem::CycElem(CycFieldPtr f, std::vector<Rat> coeffs) : f_(std::move(f)), c_(std::move(coeffs))
{
    if (!f_)
        throw std::invalid_argument("CycElem: null field");
    if (c_.size() != f_->degree())
        throw std::invalid_argument("CycElem: coefficient vector length != field degree");
}

CycElem CycElem::from_rat(const CycFieldPtr& f, const Rat& r)
{
    std::vector<Rat> c(f->degree(), Rat(0));
    c[0] = r;
    return CycElem(f, std::move(c));
}

CycElem CycElem::zero(const CycFieldPtr& f) { return from_rat(f, Rat(0)); }
CycElem CycElem::one(const CycFieldPtr& f) { return from_rat(f, Rat(1)); }

CycElem CycElem::root_power(const CycFieldPtr& f, long i)
{
    long k = static_cast<long>(f->conductor());
    long e = ((i % k) + k) % k;
    QPoly z(static_cast<size_t>(e) + 1, Rat(0));
    z[static_cast<size_t>(e)] = Rat(1);
    poly_mod(z, f->modulus());
    z.resize(f->degree(), Rat(0));
    return CycElem(f, std::move(z));
}

bool CycElem::is_zero() const
{
    for (const auto& c : c_)
        if (!c.is_zero())
            return false;
    return true;
}

bool CycElem::is_rational() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero())
            return false;
    return true;
}

Rat CycElem::rational_value() const
{
    if (!is_rational())
        throw std::domain_error("CycElem: not a rational element");
    return c_.empty() ? Rat(0) : c_[0];
}

void CycElem::check_same_field(const CycElem& o) const
{
    if (!f_ || !o.f_ || f_->conductor() != o.f_->conductor())
        throw std::invalid_argument("CycElem: mismatched conductors");
}

CycElem CycElem::operator-() const
{
    CycElem r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

CycElem& CycElem::operator+=(const CycElem& o)
{
    check_same_field(o);
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

CycElem& CycElem::operator-=(const CycElem& o)
{
    check_same_field(o);
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

CycElem& CycElem::operator*=(const CycElem& o)
{
    check_same_field(o);
    QPoly prod(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            prod[i + j] += c_[i] * o.c_[j];
    }
    poly_mod(prod, f_->modulus());
    prod.resize(f_->degree(), Rat(0));
    c_ = std::move(prod);
    return *this;
}

CycElem& CycElem::operator*=(const Rat& r)
{
    for (auto& c : c_)
        c *= r;
    return *this;
}

CycElem CycElem::inverse() const
{
    if (is_zero())
        throw std::domain_error("CycElem: inversion of zero");
    // Extended Euclid in Q[z] against the irreducible modulus.
    QPoly r0 = f_->modulus();
    QPoly r1 = c_;
    trim(r1);
    QPoly s0{}, s1{Rat(1)}; // s tracks the coefficient of *this
    while (!r1.empty()) {
        auto [q, rem] = divmod(r0, r1);
        QPoly qs = mul(q, s1);
        QPoly s2 = s0;
        if (s2.size() < qs.size())
            s2.resize(qs.size(), Rat(0));
        for (size_t i = 0; i < qs.size(); ++i)
            s2[i] -= qs[i];
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1)
        throw std::logic_error("CycElem: gcd with irreducible modulus not a unit");
    Rat inv_lead = Rat(1) / r0[0];
    for (auto& c : s0)
        c *= inv_lead;
    poly_mod(s0, f_->modulus());
    s0.resize(f_->degree(), Rat(0));
    return CycElem(f_, std::move(s0));
}

bool operator==(const CycElem& a, const CycElem& b)
{
    a.check_same_field(b);
    return a.c_ == b.c_;
}

CycElem CycElem::widen(const CycFieldPtr& bigger) const
{
    unsigned a = f_->conductor(), b = bigger->conductor();
    if (b % a != 0)
        throw std::invalid_argument("CycElem::widen: old conductor must divide new");
    unsigned r = b / a;
    CycElem acc = CycElem::zero(bigger);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        CycElem t = CycElem::root_power(bigger, static_cast<long>(i * r));
        t *= c_[i];
        acc += t;
    }
    return acc;
}

} // namespace weylkit
