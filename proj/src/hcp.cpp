#include "weylkit/hcp.hpp"

#include <stdexcept>

#include "weylkit/linalg.hpp"
#include "weylkit/testing.hpp"

namespace weylkit {

namespace testing {
bool corrupt_b_absorption = false;
} // namespace testing

Hcp::Hcp(unsigned k, long r) : k_(k), r_(r), f_(CycField::get(k)) {}

Hcp Hcp::xa_atom(unsigned k, long r, long l, long i, const CycElem& c)
{
    Hcp h(k, r);
    h.add_xa(l, i, c);
    return h;
}

Hcp Hcp::b_atom(unsigned k, long r, long j, const CycElem& c)
{
    Hcp h(k, r);
    h.add_b(j, c);
    return h;
}

void Hcp::add_xa(long l, long i, const CycElem& c)
{
    if (l < 0)
        throw std::invalid_argument("Hcp: negative x-degree");
    if (c.is_zero())
        return;
    long k = static_cast<long>(k_);
    long im = ((i % k) + k) % k;
    auto it = xa_.find({l, im});
    if (it == xa_.end()) {
        xa_.emplace(std::make_pair(l, im), c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            xa_.erase(it);
    }
}

void Hcp::add_b(long j, const CycElem& c)
{
    if (j <= 0)
        return; // B_j = 0 for j <= 0
    if (r_ < 0 && j <= -r_)
        return; // B_j D^r is the zero operator here
    if (c.is_zero())
        return;
    auto it = b_.find(j);
    if (it == b_.end()) {
        b_.emplace(j, c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            b_.erase(it);
    }
}

Hcp Hcp::operator-() const
{
    Hcp h(k_, r_);
    for (const auto& [key, c] : xa_)
        h.xa_.emplace(key, -c);
    for (const auto& [j, c] : b_)
        h.b_.emplace(j, -c);
    return h;
}

Hcp operator+(const Hcp& a, const Hcp& b)
{
    if (a.k_ != b.k_ || a.r_ != b.r_)
        throw std::invalid_argument("Hcp: modulus/order mismatch in addition");
    Hcp h = a;
    for (const auto& [key, c] : b.xa_)
        h.add_xa(key.first, key.second, c);
    for (const auto& [j, c] : b.b_)
        h.add_b(j, c);
    return h;
}

Hcp operator-(const Hcp& a, const Hcp& b) { return a + (-b); }

Hcp Hcp::scale(const CycElem& c) const
{
    Hcp h(k_, r_);
    if (c.is_zero())
        return h;
    for (const auto& [key, v] : xa_) {
        CycElem w = v * c;
        if (!w.is_zero())
            h.xa_.emplace(key, w);
    }
    for (const auto& [j, v] : b_) {
        CycElem w = v * c;
        if (!w.is_zero())
            h.b_.emplace(j, w);
    }
    return h;
}

bool operator==(const Hcp& a, const Hcp& b)
{
    return a.k_ == b.k_ && a.r_ == b.r_ && a.xa_ == b.xa_ && a.b_ == b.b_;
}

std::optional<long> Hcp::sdeg_a() const
{
    std::optional<long> m;
    for (const auto& [key, c] : xa_)
        m = m ? std::max(*m, key.first) : key.first;
    return m;
}

std::optional<long> Hcp::sdeg_b() const
{
    if (b_.empty())
        return std::nullopt;
    return b_.rbegin()->first;
}

Hcpc::Hcpc(unsigned k) : k_(k) {}

Hcpc Hcpc::from_hcp(const Hcp& h)
{
    Hcpc c(h.modulus());
    c.add(h);
    return c;
}

Hcpc Hcpc::scalar(unsigned k, const CycElem& c)
{
    return from_hcp(Hcp::xa_atom(k, 0, 0, 0, c));
}

Hcpc Hcpc::one(unsigned k) { return scalar(k, CycElem::one(CycField::get(k))); }

const Hcp* Hcpc::component(long r) const
{
    auto it = comp_.find(r);
    return it == comp_.end() ? nullptr : &it->second;
}

Hcp Hcpc::component_or_zero(long r) const
{
    const Hcp* h = component(r);
    return h ? *h : Hcp(k_, r);
}

void Hcpc::add(const Hcp& h)
{
    if (h.modulus() != k_)
        throw std::invalid_argument("Hcpc: modulus mismatch");
    if (h.is_zero())
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

Hcpc Hcpc::operator-() const
{
    Hcpc c(k_);
    for (const auto& [r, h] : comp_)
        c.comp_.emplace(r, -h);
    return c;
}

Hcpc operator+(const Hcpc& a, const Hcpc& b)
{
    if (a.k_ != b.k_)
        throw std::invalid_argument("Hcpc: modulus mismatch");
    Hcpc c = a;
    for (const auto& [r, h] : b.comp_)
        c.add(h);
    return c;
}

Hcpc operator-(const Hcpc& a, const Hcpc& b) { return a + (-b); }

Hcpc Hcpc::scale(const CycElem& c) const
{
    Hcpc out(k_);
    for (const auto& [r, h] : comp_)
        out.add(h.scale(c));
    return out;
}

bool operator==(const Hcpc& a, const Hcpc& b) { return a.k_ == b.k_ && a.comp_ == b.comp_; }

std::optional<long> Hcpc::ord() const
{
    if (comp_.empty())
        return std::nullopt;
    return comp_.rbegin()->first;
}

std::optional<long> Hcpc::sdeg_a() const
{
    std::optional<long> m;
    for (const auto& [r, h] : comp_)
        if (auto s = h.sdeg_a())
            m = m ? std::max(*m, *s) : *s;
    return m;
}

std::optional<long> Hcpc::sdeg_b() const
{
    std::optional<long> m;
    for (const auto& [r, h] : comp_)
        if (auto s = h.sdeg_b())
            m = m ? std::max(*m, *s) : *s;
    return m;
}

namespace {

// One D-power combination step:
//   D^a D^b = D^{a+b}                                   unless a < 0 < b,
//   Int^u d^b = D^{b-u} - sum_{h=1}^{min(u,b)} B_{h+max(u-b,0)} D^{b-u}.
struct DDTerm {
    bool has_b;
    long j;    // B index when has_b
    long sign; // +1 or -1
    long dpow;
};

std::vector<DDTerm> mul_dd(long a, long b)
{
    std::vector<DDTerm> out;
    out.push_back({false, 0, +1, a + b});
    if (a < 0 && b > 0) {
        long u = -a;
        long base = std::max(u - b, 0L);
        long c = std::min(u, b);
        for (long h = 1; h <= c; ++h)
            out.push_back({true, h + base, -1, a + b});
    }
    return out;
}

class MulEngine {
public:
    MulEngine(unsigned k, long r_out) : k_(k), f_(CycField::get(k)), acc_(k, r_out) {}

    CycElem xi(long e) const { return CycElem::root_power(f_, e); }

    void emit_xa(long a, long i, long s, const CycElem& c)
    {
        // atom x^a A_i D^s = x^a A_i d^a D^{s-a}
        if (s - a != acc_.order())
            throw std::logic_error("hcp_mul: order drift in XA emission");
        acc_.add_xa(a, i, c);
    }

    void emit_b(long j, long w, const CycElem& c)
    {
        if (w != acc_.order())
            throw std::logic_error("hcp_mul: order drift in B emission");
        acc_.add_b(j, c);
    }

    // B_j times a chain of D powers, reduced left to right.
    void reduce_b_chain(long j, const CycElem& c, std::vector<long> chain)
    {
        if (j <= 0 || c.is_zero())
            return;
        while (chain.size() > 1) {
            long a = chain[0], b = chain[1];
            if (a < 0 && b > 0) {
                for (const DDTerm& t : mul_dd(a, b)) {
                    if (!t.has_b) {
                        std::vector<long> rest{t.dpow};
                        rest.insert(rest.end(), chain.begin() + 2, chain.end());
                        reduce_b_chain(j, c, std::move(rest));
                    } else if (t.j == j) {
                        std::vector<long> rest{t.dpow};
                        rest.insert(rest.end(), chain.begin() + 2, chain.end());
                        reduce_b_chain(j, -c, std::move(rest));
                    }
                }
                return;
            }
            chain[1] = a + b;
            chain.erase(chain.begin());
        }
        emit_b(j, chain[0], c);
    }

    // x^alpha A_mu B_j D^w  ->  canonical B terms.
    void absorb_x_a_b(long alpha, long mu, long j, long w, const CycElem& c)
    {
        if (j <= 0)
            return;
        CycElem coef = c * xi(mu * (j - 1));
        if (alpha > 0)
            coef *= Rat(falling_factorial(j - 1 + alpha, alpha)); // (j-1+alpha)!/(j-1)!
        if (testing::corrupt_b_absorption)
            coef *= Rat(2);
        reduce_b_chain(j + alpha, coef, {-alpha, w});
    }

    // (x^a A_i D^s)(x^a2 A_i2 D^s2)
    void mul_xa_xa(long a, long i, long s, const CycElem& ca, long a2, long i2, long s2, const CycElem& cb)
    {
        CycElem c0 = ca * cb;
        for (long t = 0; t <= a2; ++t) {
            BigInt f = binomial_z(s, t) * falling_factorial(a2, t);
            if (f == 0)
                continue;
            CycElem c = c0 * Rat(f) * xi((s - t) * i2 + (a2 - t) * i);
            long alpha = a + a2 - t;
            long mu = i + i2;
            for (const DDTerm& dt : mul_dd(s - t, s2)) {
                if (!dt.has_b)
                    emit_xa(alpha, mu, dt.dpow, c);
                else
                    absorb_x_a_b(alpha, mu, dt.j, dt.dpow, dt.sign < 0 ? -c : c);
            }
        }
    }

    // (x^a A_i D^s)(B_j D^m)
    void mul_xa_b(long a, long i, long s, const CycElem& ca, long j, long m, const CycElem& cb)
    {
        long j2 = j - s; // D^s B_j = B_{j-s} D^s
        if (j2 <= 0)
            return;
        CycElem c = ca * cb * xi(i * (j2 - 1));
        if (a > 0)
            c *= Rat(falling_factorial(j2 - 1 + a, a));
        reduce_b_chain(j2 + a, c, {-a, s, m});
    }

    // (B_j D^m)(x^a2 A_i2 D^s2)
    void mul_b_xa(long j, long m, const CycElem& ca, long a2, long i2, long s2, const CycElem& cb)
    {
        CycElem base = ca * cb * xi(i2 * (m - a2 + j - 1));
        for (long t = 0; t <= a2; ++t) {
            long rem = a2 - t;
            if (rem > j - 1)
                continue; // B_j x^rem = 0
            BigInt f = binomial_z(m, t) * falling_factorial(a2, t);
            if (f == 0)
                continue;
            CycElem c = base * Rat(f * falling_factorial(j - 1, rem)); // (j-1)!/(j-1-rem)!
            reduce_b_chain(j, c, {-rem, m - t, s2});
        }
    }

    // (B_j D^m)(B_j2 D^m2)
    void mul_b_b(long j, long m, const CycElem& ca, long j2, long m2, const CycElem& cb)
    {
        long jj = j2 - m;
        if (jj <= 0 || jj != j)
            return;
        reduce_b_chain(j, ca * cb, {m, m2});
    }

    Hcp take() { return std::move(acc_); }

private:
    unsigned k_;
    CycFieldPtr f_;
    Hcp acc_;
};

} // namespace

Hcp hcp_mul(const Hcp& a, const Hcp& b)
{
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("hcp_mul: modulus mismatch (rescale first)");
    MulEngine eng(a.modulus(), a.order() + b.order());
    for (const auto& [ka, ca] : a.xa()) {
        long la = ka.first, ia = ka.second, sa = la + a.order();
        for (const auto& [kb, cb] : b.xa())
            eng.mul_xa_xa(la, ia, sa, ca, kb.first, kb.second, kb.first + b.order(), cb);
        for (const auto& [jb, cb] : b.b())
            eng.mul_xa_b(la, ia, sa, ca, jb, b.order(), cb);
    }
    for (const auto& [ja, ca] : a.b()) {
        for (const auto& [kb, cb] : b.xa())
            eng.mul_b_xa(ja, a.order(), ca, kb.first, kb.second, kb.first + b.order(), cb);
        for (const auto& [jb, cb] : b.b())
            eng.mul_b_b(ja, a.order(), ca, jb, b.order(), cb);
    }
    return eng.take();
}

Hcpc hcp_mul(const Hcpc& a, const Hcpc& b)
{
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("hcp_mul: modulus mismatch (rescale first)");
    Hcpc out(a.modulus());
    for (const auto& [ra, ha] : a.components())
        for (const auto& [rb, hb] : b.components())
            out.add(hcp_mul(ha, hb));
    return out;
}

Hcpc hcp_pow(const Hcpc& a, unsigned e)
{
    Hcpc acc = Hcpc::one(a.modulus());
    Hcpc p = a;
    while (e) {
        if (e & 1)
            acc = hcp_mul(acc, p);
        e >>= 1;
        if (e)
            p = hcp_mul(p, p);
    }
    return acc;
}

Hcpc hcp_commutator(const Hcpc& a, const Hcpc& b)
{
    return hcp_mul(a, b) - hcp_mul(b, a);
}

Hcpc generator(unsigned k, const GenTok& g)
{
    CycFieldPtr f = CycField::get(k);
    CycElem one = CycElem::one(f);
    switch (g.kind) {
    case GenTok::Kind::X:
        return Hcpc::from_hcp(Hcp::xa_atom(k, -1, 1, 0, one));
    case GenTok::Kind::D:
        return Hcpc::from_hcp(Hcp::xa_atom(k, 1, 0, 0, one));
    case GenTok::Kind::Int:
        return Hcpc::from_hcp(Hcp::xa_atom(k, -1, 0, 0, one));
    case GenTok::Kind::Delta:
        return Hcpc::from_hcp(Hcp::b_atom(k, 0, 1, one));
    case GenTok::Kind::A:
        return Hcpc::from_hcp(Hcp::xa_atom(k, 0, 0, g.a_index, one));
    case GenTok::Kind::Scalar:
        return Hcpc::scalar(k, CycElem::from_rat(f, g.scalar));
    }
    throw std::logic_error("generator: unknown kind");
}

Hcpc from_word(unsigned k, const std::vector<GenTok>& word)
{
    Hcpc acc = Hcpc::one(k);
    for (const GenTok& g : word)
        acc = hcp_mul(acc, generator(k, g));
    return acc;
}

Hcp embed_monomial(unsigned k, long i, long j)
{
    if (i < 0 || j < 0)
        throw std::invalid_argument("embed_monomial: negative exponent");
    return Hcp::xa_atom(k, j - i, i, 0, CycElem::one(CycField::get(k)));
}

Hcpc embed_weyl(unsigned k, const WeylOp<Rat>& p)
{
    Hcpc out(k);
    CycFieldPtr f = CycField::get(k);
    for (const auto& [key, c] : p.terms())
        out.add(embed_monomial(k, key.first, key.second).scale(CycElem::from_rat(f, c)));
    return out;
}

Hcpc embed_weyl(unsigned k, const WeylOp<CycElem>& p)
{
    Hcpc out(k);
    for (const auto& [key, c] : p.terms())
        out.add(embed_monomial(k, key.first, key.second).scale(c));
    return out;
}

Hcpc gamma_power(unsigned k, long e)
{
    if (e < 0)
        return Hcpc(k); // Gamma_i = 0 for i < 0
    // (x d)^e = sum_l S(e, l) x^l d^l with Stirling numbers of the second kind.
    std::vector<std::vector<BigInt>> s(static_cast<size_t>(e) + 1,
                                       std::vector<BigInt>(static_cast<size_t>(e) + 1, 0));
    s[0][0] = 1;
    for (long n = 1; n <= e; ++n)
        for (long l = 1; l <= n; ++l)
            s[n][l] = s[n - 1][l - 1] + BigInt(l) * s[n - 1][l];
    Hcp h(k, 0);
    CycFieldPtr f = CycField::get(k);
    for (long l = 0; l <= e; ++l)
        if (s[e][l] != 0)
            h.add_xa(l, 0, CycElem::from_rat(f, Rat(s[e][l])));
    return Hcpc::from_hcp(h);
}

namespace {

// m! / (m - s)! for integer s of either sign; zero when s > m.
Rat dpow_coef(long m, long s)
{
    if (s > m)
        return Rat(0);
    if (s >= 0)
        return Rat(falling_factorial(m, s));
    return Rat(BigInt(1), falling_factorial(m - s, -s));
}

void add_into(std::map<long, CycElem>& out, long deg, const CycElem& c)
{
    if (c.is_zero())
        return;
    auto it = out.find(deg);
    if (it == out.end()) {
        out.emplace(deg, c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            out.erase(it);
    }
}

} // namespace

std::map<long, CycElem> act_monomial(const Hcp& h, long m)
{
    std::map<long, CycElem> out;
    CycFieldPtr f = h.field();
    long r = h.order();
    for (const auto& [key, c] : h.xa()) {
        long l = key.first, i = key.second, s = l + r;
        Rat coef = dpow_coef(m, s);
        if (coef.is_zero())
            continue;
        CycElem v = c * coef * CycElem::root_power(f, i * (m - s));
        add_into(out, m - r, v);
    }
    for (const auto& [j, c] : h.b()) {
        if (r > m)
            continue;
        if (m - r != j - 1)
            continue;
        add_into(out, j - 1, c * dpow_coef(m, r));
    }
    return out;
}

std::map<long, CycElem> act_monomial(const Hcpc& h, long m)
{
    std::map<long, CycElem> out;
    for (const auto& [r, comp] : h.components())
        for (const auto& [deg, c] : act_monomial(comp, m))
            add_into(out, deg, c);
    return out;
}

TruncSeries<CycElem> act_series(const Hcpc& h, const TruncSeries<CycElem>& f)
{
    long max_s = 0;
    for (const auto& [r, comp] : h.components()) {
        for (const auto& [key, c] : comp.xa())
            max_s = std::max(max_s, key.first + r);
        if (!comp.b().empty())
            max_s = std::max(max_s, r);
    }
    long prec = static_cast<long>(f.precision()) - max_s;
    if (prec <= 0)
        throw std::domain_error("act_series: precision exhausted; need precision > "
                                + std::to_string(max_s));
    CycElem zero = scalar_zero(f.sample());
    std::vector<CycElem> out(static_cast<size_t>(prec), zero);
    for (size_t m = 0; m < f.precision(); ++m) {
        if (scalar_is_zero(f[m]))
            continue;
        for (const auto& [deg, c] : act_monomial(h, static_cast<long>(m))) {
            if (deg < prec)
                out[static_cast<size_t>(deg)] += c * f[m];
        }
    }
    return TruncSeries<CycElem>(std::move(out));
}

bool is_totally_free_b(const Hcp& h)
{
    if (h.sdeg_b())
        return false;
    long r = h.order();
    if (r >= 0 || h.is_zero())
        return true;
    Hcp dp = Hcp::xa_atom(h.modulus(), 1, 0, 0, CycElem::one(h.field()));
    Hcp cur = h;
    for (long p = 1; p <= -r; ++p) {
        cur = hcp_mul(cur, dp);
        if (cur.sdeg_b())
            return false;
    }
    return true;
}

bool is_totally_free_b(const Hcpc& h)
{
    for (const auto& [r, comp] : h.components())
        if (!is_totally_free_b(comp))
            return false;
    return true;
}

std::vector<Hcp> centralizer_basis(unsigned k, long order)
{
    CycFieldPtr f = CycField::get(k);
    CycElem one = CycElem::one(f);
    std::vector<Hcp> out;
    if (order >= 0) {
        for (long i = 0; i < static_cast<long>(k); ++i)
            out.push_back(Hcp::xa_atom(k, order, 0, i, one));
        return out;
    }
    long u = -order;
    if (u >= static_cast<long>(k))
        throw std::invalid_argument("centralizer_basis: order must exceed -k");
    // Constraints sum_j c_j xi^{j(q-1)} = 0 for q = 1..u.
    std::vector<std::vector<CycElem>> m(static_cast<size_t>(u),
                                        std::vector<CycElem>(k, CycElem::zero(f)));
    for (long q = 1; q <= u; ++q)
        for (long j = 0; j < static_cast<long>(k); ++j)
            m[static_cast<size_t>(q - 1)][static_cast<size_t>(j)] = CycElem::root_power(f, j * (q - 1));
    for (const auto& v : kernel_basis(m, one)) {
        Hcp h(k, order);
        for (long j = 0; j < static_cast<long>(k); ++j)
            h.add_xa(0, j, v[static_cast<size_t>(j)]);
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<Hcp> centralizer_basis(unsigned k, long order_min, long order_max)
{
    std::vector<Hcp> out;
    for (long m = order_min; m <= order_max; ++m)
        for (auto& h : centralizer_basis(k, m))
            out.push_back(std::move(h));
    return out;
}

bool is_central(const Hcpc& h, unsigned k)
{
    Hcpc dk = Hcpc::from_hcp(Hcp::xa_atom(k, static_cast<long>(k), 0, 0,
                                          CycElem::one(CycField::get(k))));
    return hcp_commutator(dk, h).is_zero();
}

bool is_central(const Hcp& h, unsigned k) { return is_central(Hcpc::from_hcp(h), k); }

Hcp rescale(const Hcp& h, unsigned new_modulus)
{
    unsigned a = h.modulus(), b = new_modulus;
    if (b % a != 0)
        throw std::invalid_argument("rescale: old modulus must divide new");
    long rfac = static_cast<long>(b / a);
    CycFieldPtr fb = CycField::get(b);
    Hcp out(b, h.order());
    for (const auto& [key, c] : h.xa())
        out.add_xa(key.first, key.second * rfac, c.widen(fb));
    for (const auto& [j, c] : h.b())
        out.add_b(j, c.widen(fb));
    return out;
}

Hcpc rescale(const Hcpc& h, unsigned new_modulus)
{
    Hcpc out(new_modulus);
    for (const auto& [r, comp] : h.components())
        out.add(rescale(comp, new_modulus));
    return out;
}

} // namespace weylkit
