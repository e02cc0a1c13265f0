#include "weylkit/graded.hpp"
#include "weylkit/linalg.hpp"

#include <stdexcept>

namespace weylkit {

GradedOp::GradedOp(unsigned k, long lo) : k_(k), lo_(lo) {}

GradedOp GradedOp::from_hcpc(const Hcpc& h, long lo)
{
    GradedOp g(h.modulus(), lo);
    for (const auto& [r, c] : h.components())
        g.add_component(c);
    return g;
}

GradedOp GradedOp::one(unsigned k) { return from_hcpc(Hcpc::one(k)); }

GradedOp GradedOp::scalar(unsigned k, const CycElem& c) { return from_hcpc(Hcpc::scalar(k, c)); }

GradedOp GradedOp::d_power(unsigned k, long p)
{
    return from_hcpc(Hcpc::from_hcp(Hcp::xa_atom(k, p, 0, 0, CycElem::one(CycField::get(k)))));
}

GradedOp GradedOp::from_weyl(unsigned k, const WeylOp<Rat>& p)
{
    return from_hcpc(embed_weyl(k, p));
}

GradedOp GradedOp::from_d1(unsigned k, const D1Op<Rat>& p)
{
    long n = static_cast<long>(p.dsize()) - 1;
    long prec = static_cast<long>(p.precision());
    GradedOp g(k, n - prec + 1);
    CycFieldPtr f = CycField::get(k);
    std::map<long, Hcp> comp;
    for (long i = 0; i <= n; ++i) {
        const auto& series = p.coeff(static_cast<size_t>(i));
        for (long c = 0; c < static_cast<long>(series.precision()); ++c) {
            if (scalar_is_zero(series[static_cast<size_t>(c)]))
                continue;
            long w = i - c;
            if (w < g.lo_)
                continue;
            auto it = comp.find(w);
            if (it == comp.end())
                it = comp.emplace(w, Hcp(k, w)).first;
            it->second.add_xa(c, 0, CycElem::from_rat(f, series[static_cast<size_t>(c)]));
        }
    }
    for (auto& [w, h] : comp)
        g.add_component(h);
    return g;
}

const Hcp* GradedOp::component(long r) const
{
    auto it = comp_.find(r);
    return it == comp_.end() ? nullptr : &it->second;
}

Hcp GradedOp::component_or_zero(long r) const
{
    const Hcp* h = component(r);
    return h ? *h : Hcp(k_, r);
}

std::optional<long> GradedOp::ord() const
{
    if (comp_.empty())
        return std::nullopt;
    return comp_.rbegin()->first;
}

Hcp GradedOp::sigma() const
{
    auto o = ord();
    if (!o)
        throw std::domain_error("GradedOp::sigma: zero to depth");
    return comp_.rbegin()->second;
}

void GradedOp::add_component(const Hcp& h)
{
    if (h.modulus() != k_)
        throw std::invalid_argument("GradedOp: modulus mismatch");
    if (h.order() < lo_ || h.is_zero())
        return;
    auto it = comp_.find(h.order());
    if (it == comp_.end()) {
        comp_.emplace(h.order(), h);
    } else {
        it->second = it->second + h;
        if (it->second.is_zero())
            comp_.erase(it);
    }
}

GradedOp GradedOp::truncated(long new_lo) const
{
    GradedOp g(k_, std::max(lo_, new_lo));
    for (const auto& [r, h] : comp_)
        if (r >= g.lo_)
            g.comp_.emplace(r, h);
    return g;
}

GradedOp GradedOp::operator-() const
{
    GradedOp g(k_, lo_);
    for (const auto& [r, h] : comp_)
        g.comp_.emplace(r, -h);
    return g;
}

GradedOp GradedOp::scale(const CycElem& c) const
{
    GradedOp g(k_, lo_);
    if (c.is_zero())
        return g;
    for (const auto& [r, h] : comp_)
        g.add_component(h.scale(c));
    return g;
}

GradedOp operator+(const GradedOp& a, const GradedOp& b)
{
    if (a.k_ != b.k_)
        throw std::invalid_argument("GradedOp: modulus mismatch");
    GradedOp g(a.k_, std::max(a.lo_, b.lo_));
    for (const auto& [r, h] : a.comp_)
        g.add_component(h);
    for (const auto& [r, h] : b.comp_)
        g.add_component(h);
    return g;
}

GradedOp operator-(const GradedOp& a, const GradedOp& b) { return a + (-b); }

namespace {
// Highest order that could carry a nonzero component.
long top_effective(const GradedOp& g)
{
    if (auto o = g.ord())
        return *o;
    return g.lo() - 1; // zero to depth: nothing at or above lo
}
} // namespace

GradedOp operator*(const GradedOp& a, const GradedOp& b)
{
    if (a.k_ != b.k_)
        throw std::invalid_argument("GradedOp: modulus mismatch");
    bool a_zero = a.comp_.empty() && a.exact();
    bool b_zero = b.comp_.empty() && b.exact();
    if (a_zero || b_zero)
        return GradedOp(a.k_); // exact zero
    long lo;
    if (a.exact() && b.exact()) {
        lo = GradedOp::kExactLo;
    } else {
        long c1 = a.exact() ? GradedOp::kExactLo : a.lo_ + top_effective(b);
        long c2 = b.exact() ? GradedOp::kExactLo : b.lo_ + top_effective(a);
        lo = std::max(c1, c2);
    }
    GradedOp g(a.k_, lo);
    for (const auto& [u, hu] : a.comp_)
        for (const auto& [v, hv] : b.comp_) {
            if (u + v < lo)
                continue;
            g.add_component(hcp_mul(hu, hv));
        }
    return g;
}

bool equal_to_depth(const GradedOp& a, const GradedOp& b)
{
    if (a.modulus() != b.modulus())
        return false;
    long lo = std::max(a.lo(), b.lo());
    for (const auto& [r, h] : a.components())
        if (r >= lo && !(b.component_or_zero(r) == h))
            return false;
    for (const auto& [r, h] : b.components())
        if (r >= lo && a.component(r) == nullptr && !h.is_zero())
            return false;
    return true;
}

Hcpc GradedOp::to_hcpc() const
{
    Hcpc h(k_);
    for (const auto& [r, c] : comp_)
        h.add(c);
    return h;
}

GradedOp graded_pow(const GradedOp& a, unsigned e)
{
    GradedOp acc = GradedOp::one(a.modulus());
    GradedOp p = a;
    while (e) {
        if (e & 1)
            acc = acc * p;
        e >>= 1;
        if (e)
            p = p * p;
    }
    return acc;
}

GradedOp graded_commutator(const GradedOp& a, const GradedOp& b) { return a * b - b * a; }

namespace {

// Inverse of s0 = sum a_i A_i + sum g_j B_j inside the order-0 subring with
// x-degree 0. The A-part inverts through the k x k convolution system; the
// B-lines then invert via the characters chi_j(a) = sum_i a_i xi^{i(j-1)}.
Hcp invert_order0(const Hcp& s0)
{
    unsigned k = s0.modulus();
    CycFieldPtr f = s0.field();
    const CycElem zero = CycElem::zero(f), one = CycElem::one(f);
    for (const auto& [key, c] : s0.xa())
        if (key.first > 0)
            throw std::domain_error("invert_unit: leading component has positive x-degree atoms");

    std::vector<CycElem> a(k, zero);
    for (const auto& [key, c] : s0.xa())
        a[static_cast<size_t>(key.second)] = c;

    // Convolution system: sum_{i+j = m mod k} a_i y_j = [m == 0].
    std::vector<std::vector<CycElem>> mat(k, std::vector<CycElem>(k, zero));
    std::vector<CycElem> rhs(k, zero);
    rhs[0] = one;
    for (size_t m = 0; m < k; ++m)
        for (size_t j = 0; j < k; ++j)
            mat[m][j] = a[(m + k - j) % k];
    auto sol = solve_linear(mat, rhs, one);
    if (!sol.consistent || sol.rank != k)
        throw std::domain_error("invert_unit: A-part of the leading component is not invertible");

    Hcp inv(k, 0);
    for (size_t j = 0; j < k; ++j)
        inv.add_xa(0, static_cast<long>(j), sol.particular[j]);

    auto chi = [&](const std::vector<CycElem>& c, long j) {
        CycElem acc = zero;
        for (size_t i = 0; i < k; ++i)
            acc += c[i] * CycElem::root_power(f, static_cast<long>(i) * (j - 1));
        return acc;
    };
    for (const auto& [j, g] : s0.b()) {
        CycElem ca = chi(a, j);
        CycElem denom = ca * (ca + g);
        if (denom.is_zero())
            throw std::domain_error("invert_unit: leading component not invertible on a B-line");
        inv.add_b(j, -(g * denom.inverse()));
    }
    return inv;
}

} // namespace

GradedOp invert_unit(const GradedOp& s, std::optional<long> depth)
{
    auto o = s.ord();
    if (!o || *o != 0)
        throw std::domain_error("invert_unit: operator must have order 0");
    long n;
    if (depth) {
        n = *depth;
    } else if (!s.exact()) {
        n = -s.lo();
    } else {
        throw std::invalid_argument("invert_unit: exact input needs an explicit depth");
    }
    if (n < 0)
        throw std::invalid_argument("invert_unit: negative depth");

    Hcp s0_inv = invert_order0(s.component_or_zero(0));
    GradedOp x(s.modulus(), -n);
    x.add_component(s0_inv);
    for (long t = 1; t <= n; ++t) {
        Hcp acc(s.modulus(), -t);
        for (long w = -t + 1; w <= 0; ++w) {
            const Hcp* xw = x.component(w);
            const Hcp* sv = s.component(-t - w);
            if (xw && sv)
                acc = acc + hcp_mul(*xw, *sv);
        }
        // (X S)_{-t} = 0  =>  X_{-t} = -(sum) * s0^{-1}
        x.add_component(hcp_mul(-acc, s0_inv));
    }
    return x;
}

GradedOp conjugate(const GradedOp& s, const GradedOp& x, const GradedOp& s_inv)
{
    return s * x * s_inv;
}

GradedOp endo_operator(const TruncSeries<CycElem>& u, unsigned k, long depth)
{
    CycFieldPtr f = CycField::get(k);
    const CycElem zero = CycElem::zero(f), one = CycElem::one(f);
    if (!scalar_is_zero(u[0]))
        throw std::domain_error("endo_operator: u must lie in the maximal ideal");
    if (depth < 0)
        throw std::invalid_argument("endo_operator: negative depth");

    // 1 + u'(0) must be a k-th root of unity xi^i.
    CycElem lead = (u.precision() > 1 ? u[1] : zero) + one;
    long twist = -1;
    for (long i = 0; i < static_cast<long>(k); ++i)
        if (lead == CycElem::root_power(f, i)) {
            twist = i;
            break;
        }
    if (twist < 0)
        throw std::domain_error("endo_operator: 1 + u'(0) is not a k-th root of unity");

    size_t need = static_cast<size_t>(2 * depth + 1);
    if (u.precision() < need)
        throw std::domain_error("endo_operator: series precision too small; need "
                                + std::to_string(need));

    // x + u = xi^i (x + w) with w in m^2: exp(w * d) carries the tail.
    TruncSeries<CycElem> xs = TruncSeries<CycElem>::monomial(one, 1, u.precision());
    TruncSeries<CycElem> w = (xs + u).scale(CycElem::root_power(f, -twist)) - xs;

    GradedOp tail(k, -depth);
    TruncSeries<CycElem> wn = TruncSeries<CycElem>::constant(one, u.precision());
    Rat inv_fact(1);
    std::map<long, Hcp> comp;
    for (long n = 0; n <= depth; ++n) {
        if (n > 0) {
            wn = wn * w;
            inv_fact /= Rat(n);
        }
        for (long c = 0; c < static_cast<long>(wn.precision()); ++c) {
            const CycElem& coef = wn[static_cast<size_t>(c)];
            if (scalar_is_zero(coef))
                continue;
            long order = n - c;
            if (order < -depth)
                continue;
            auto it = comp.find(order);
            if (it == comp.end())
                it = comp.emplace(order, Hcp(k, order)).first;
            it->second.add_xa(c, 0, coef * inv_fact);
        }
    }
    for (auto& [r, h] : comp)
        tail.add_component(h);
    GradedOp a_i = GradedOp::from_hcpc(Hcpc::from_hcp(Hcp::xa_atom(k, 0, 0, twist, one)));
    return tail * a_i;
}

} // namespace weylkit
