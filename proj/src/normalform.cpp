#include "weylkit/normalform.hpp"

#include <stdexcept>

#include "weylkit/linalg.hpp"

namespace weylkit {

VariableChange VariableChange::identity(size_t precision)
{
    return VariableChange{TruncSeries<Rat>::monomial(Rat(1), 1, precision),
                          TruncSeries<Rat>::constant(Rat(0), precision)};
}

D1Op<Rat> apply_change(const VariableChange& ch, const D1Op<Rat>& p)
{
    size_t prec = std::min(ch.u.precision(), p.precision());
    TruncSeries<Rat> u = ch.u.truncate(prec);
    if (!scalar_is_zero(u[0]))
        throw std::domain_error("apply_change: u must lie in the maximal ideal");
    TruncSeries<Rat> du = u.derive();
    if (scalar_is_zero(du[0]))
        throw std::domain_error("apply_change: u'(0) must be nonzero");
    // Phi(d) = (1/u') d + v as a degree-1 D1 operator.
    size_t dprec = std::min(du.precision(), ch.v.precision());
    D1Op<Rat> img_d(std::vector<TruncSeries<Rat>>{ch.v.truncate(dprec), du.inverse().truncate(dprec)});
    // Horner in d: Phi(P) = sum a_i(u) Phi(d)^i, coefficients on the left.
    size_t n = p.dsize();
    D1Op<Rat> acc = D1Op<Rat>::zero(Rat(0), prec);
    for (size_t idx = n; idx-- > 0;) {
        acc = acc * img_d;
        TruncSeries<Rat> coeff = p.coeff(idx).truncate(prec).compose(u);
        acc = acc + D1Op<Rat>(std::vector<TruncSeries<Rat>>{coeff});
    }
    return acc;
}

bool is_normalized(const D1Op<Rat>& p)
{
    if (p.is_zero())
        return false;
    long n = p.ord();
    if (n < 1 || !p.monic())
        return false;
    if (n >= 1 && !p.coeff(static_cast<size_t>(n - 1)).is_zero())
        return false;
    return true;
}

NormalizeResult normalize(const D1Op<Rat>& p)
{
    if (p.is_zero())
        throw std::domain_error("normalize: zero operator");
    long n = p.ord();
    if (n < 1)
        throw std::domain_error("normalize: order must be positive");
    size_t prec = p.precision();
    const TruncSeries<Rat>& h = p.ht();
    if (scalar_is_zero(h[0]))
        throw std::domain_error("normalize: HT(P)(0) = 0; apply a shift first");
    if (prec < 2)
        throw std::domain_error("normalize: precision too small");
    auto root = rat_nth_root(h[0], static_cast<unsigned>(n));
    if (!root)
        throw std::domain_error("normalize: HT(P)(0) has no p-th root in the field; "
                                "extend the scalar field");

    // Solve u' = h(u)^{1/p}, u(0) = 0, coefficient by coefficient.
    std::vector<Rat> uc(prec, Rat(0));
    uc[1] = *root;
    for (size_t m = 2; m < prec; ++m) {
        TruncSeries<Rat> u_partial(std::vector<Rat>(uc.begin(), uc.begin() + m));
        TruncSeries<Rat> hu = h.truncate(m).compose(u_partial);
        TruncSeries<Rat> rt = hu.scale(Rat(1) / h[0]).nth_root(static_cast<unsigned>(n)).scale(*root);
        // m u_m = [x^{m-1}] h(u)^{1/p}
        uc[m] = rt[m - 1] / Rat(static_cast<long>(m));
    }
    TruncSeries<Rat> u{std::move(uc)};

    VariableChange sub{u, TruncSeries<Rat>::constant(Rat(0), prec)};
    D1Op<Rat> p1 = apply_change(sub, p);

    // Kill the subleading coefficient by conjugation with s = exp(-(1/p) int b).
    TruncSeries<Rat> b = n >= 1 ? p1.coeff(static_cast<size_t>(n - 1))
                                : TruncSeries<Rat>::constant(Rat(0), prec);
    TruncSeries<Rat> s = b.antiderive().scale(Rat(-1, n)).exponential();
    TruncSeries<Rat> s_inv = s.inverse();
    D1Op<Rat> s_op(std::vector<TruncSeries<Rat>>{s});
    D1Op<Rat> s_inv_op(std::vector<TruncSeries<Rat>>{s_inv});
    D1Op<Rat> pn = s_inv_op * p1 * s_op;

    TruncSeries<Rat> du = u.derive();
    TruncSeries<Rat> v = (s.derive() * (du * s).inverse());
    NormalizeResult res{VariableChange{u, v}, pn};
    if (!is_normalized(res.pnorm))
        throw std::logic_error("normalize: postcondition failed");
    return res;
}

Hcp qp_tail(long p)
{
    if (p < 2)
        throw std::invalid_argument("qp_tail: requires p >= 2");
    unsigned k = static_cast<unsigned>(p);
    CycFieldPtr f = CycField::get(k);
    Hcp h(k, -p);
    h.add_xa(1, 0, CycElem::from_rat(f, Rat(-1, p)));
    h.add_xa(0, 0, CycElem::from_rat(f, Rat(p - 1, 2 * p)));
    for (long i = 1; i < p; ++i) {
        CycElem denom = (CycElem::root_power(f, -i) - CycElem::one(f)) * Rat(p);
        h.add_xa(0, i, denom.inverse());
    }
    return h;
}

namespace {

// Row coordinates of an HCP of a fixed order: xa keys then b keys.
struct CoordIndex {
    std::map<std::pair<long, long>, size_t> xa;
    std::map<long, size_t> b;
    size_t size = 0;

    void collect(const Hcp& h)
    {
        for (const auto& [key, c] : h.xa())
            if (!xa.count(key))
                xa.emplace(key, size++);
        for (const auto& [j, c] : h.b())
            if (!b.count(j))
                b.emplace(j, size++);
    }

    void write(const Hcp& h, std::vector<CycElem>& col) const
    {
        for (const auto& [key, c] : h.xa())
            col[xa.at(key)] += c;
        for (const auto& [j, c] : h.b())
            col[b.at(j)] += c;
    }
};

} // namespace

Hcp bracket_solve(long p, const Hcp& r)
{
    if (p < 1)
        throw std::invalid_argument("bracket_solve: p must be positive");
    unsigned k = static_cast<unsigned>(p);
    if (r.modulus() != k)
        throw std::invalid_argument("bracket_solve: R must live in Hcpc(p)");
    long t = p - r.order();
    if (t < 1)
        throw std::invalid_argument("bracket_solve: R must have order < p");
    CycFieldPtr f = CycField::get(k);
    const CycElem one = CycElem::one(f);

    long lmax = std::max(t - 1, r.sdeg_a().value_or(0) + p);
    long jmax = std::max(t + p, r.sdeg_b().value_or(0) + p);

    Hcp dp = Hcp::xa_atom(k, p, 0, 0, one);
    std::vector<Hcp> columns_bracket;
    std::vector<std::pair<bool, std::pair<long, long>>> atoms; // (is_b, key)
    for (long l = 0; l <= lmax; ++l)
        for (long i = 0; i < p; ++i) {
            Hcp y = Hcp::xa_atom(k, -t, l, i, one);
            columns_bracket.push_back(hcp_mul(y, dp) - hcp_mul(dp, y));
            atoms.push_back({false, {l, i}});
        }
    for (long j = t + 1; j <= jmax; ++j) {
        Hcp y = Hcp::b_atom(k, -t, j, one);
        columns_bracket.push_back(hcp_mul(y, dp) - hcp_mul(dp, y));
        atoms.push_back({true, {j, 0}});
    }

    CoordIndex rows;
    for (const Hcp& h : columns_bracket)
        rows.collect(h);
    rows.collect(r);

    std::vector<std::vector<CycElem>> mat(rows.size,
                                          std::vector<CycElem>(columns_bracket.size(),
                                                               CycElem::zero(f)));
    for (size_t c = 0; c < columns_bracket.size(); ++c) {
        std::vector<CycElem> col(rows.size, CycElem::zero(f));
        rows.write(columns_bracket[c], col);
        for (size_t rr = 0; rr < rows.size; ++rr)
            mat[rr][c] = col[rr];
    }
    std::vector<CycElem> rhs(rows.size, CycElem::zero(f));
    rows.write(r, rhs);

    auto sol = solve_linear(mat, rhs, one);
    if (!sol.consistent)
        throw BracketObstruction("bracket_solve: R is not in the image of [ . , d^p ]");

    // The particular solution has all free (centralizer) coordinates zero,
    // which is the canonical representative.
    Hcp y(k, -t);
    for (size_t c = 0; c < atoms.size(); ++c) {
        if (sol.particular[c].is_zero())
            continue;
        if (atoms[c].first)
            y.add_b(atoms[c].second.first, sol.particular[c]);
        else
            y.add_xa(atoms[c].second.first, atoms[c].second.second, sol.particular[c]);
    }
    if (!(hcp_mul(y, dp) - hcp_mul(dp, y) == r))
        throw std::logic_error("bracket_solve: residual check failed");
    return y;
}

SchurData schur(const D1Op<Rat>& pnorm, long depth)
{
    if (!is_normalized(pnorm))
        throw std::invalid_argument("schur: operator is not normalized");
    if (depth < 2)
        throw std::invalid_argument("schur: depth must be >= 2");
    long p = pnorm.ord();
    unsigned k = static_cast<unsigned>(p);
    if (static_cast<long>(pnorm.precision()) <= depth)
        throw std::domain_error("schur: coefficient precision must exceed the depth");

    GradedOp pg = GradedOp::from_d1(k, pnorm);
    GradedOp s(k, -depth);
    s.add_component(Hcp::xa_atom(k, 0, 0, 0, CycElem::one(CycField::get(k))));

    for (long t = 1; t <= depth; ++t) {
        // [d^p, S_{-t}] = sum_{u > -t} S_u P_{p-t-u}
        Hcp rt(k, p - t);
        for (long u = -t + 1; u <= 0; ++u) {
            const Hcp* su = s.component(u);
            const Hcp* pv = pg.component(p - t - u);
            if (su && pv)
                rt = rt + hcp_mul(*su, *pv);
        }
        Hcp st = bracket_solve(p, -rt);
        s.add_component(st);
    }
    GradedOp s_inv = invert_unit(s);
    return SchurData(p, std::move(s), std::move(s_inv));
}

GradedOp normal_form(const D1Op<Rat>& q, const SchurData& sd)
{
    return normal_form(GradedOp::from_d1(sd.s.modulus(), q), sd);
}

GradedOp normal_form(const GradedOp& q, const SchurData& sd)
{
    return sd.s * q * sd.s_inv;
}

ConditionAqReport condition_aq(const GradedOp& p, unsigned q, long k)
{
    ConditionAqReport rep;
    if (p.modulus() != q) {
        rep.witness = "operator not expressed in Hcpc(q)";
        return rep;
    }
    auto o = p.ord();
    if (!o) {
        rep.witness = "zero operator";
        return rep;
    }
    for (const auto& [r, h] : p.components()) {
        if (!is_totally_free_b(h)) {
            rep.witness = "component at order " + std::to_string(r) + " is not totally free of B";
            return rep;
        }
        if (r < *o) {
            long i = *o - r;
            if (h.sdeg_a().value_or(-1) >= i + k) {
                rep.witness = "Sdeg_A bound fails at order " + std::to_string(r);
                return rep;
            }
        }
    }
    Hcp sig = p.sigma();
    for (const auto& [key, c] : sig.xa())
        if (key.second != 0) {
            rep.witness = "symbol contains A_i";
            return rep;
        }
    if (sig.sdeg_a().value_or(-1) != k) {
        rep.witness = "Sdeg_A(sigma) != k";
        return rep;
    }
    rep.ok = true;
    return rep;
}

Regularity is_regular(const D1Op<Rat>& p)
{
    if (p.is_zero())
        return Regularity::Irregular;
    const TruncSeries<Rat>& h = p.ht();
    if (!scalar_is_zero(h[0]))
        return Regularity::Regular; // invertible highest coefficient
    return Regularity::Undetermined;
}

Regularity is_regular(const GradedOp& p)
{
    auto o = p.ord();
    if (!o)
        return Regularity::Irregular;
    if (*o < 0)
        return Regularity::Irregular; // 1 maps into m Dsym
    Hcp sig = p.sigma();
    if (!sig.b().empty())
        return Regularity::Undetermined;
    unsigned k = p.modulus();
    CycFieldPtr f = CycField::get(k);
    std::vector<CycElem> a(k, CycElem::zero(f));
    for (const auto& [key, c] : sig.xa()) {
        if (key.first > 0)
            return Regularity::Undetermined; // action on F not diagonal here
        a[static_cast<size_t>(key.second)] = c;
    }
    // sigma = sum a_i A_i d^o acts on d^m by the character sum at m.
    for (long m = 0; m < static_cast<long>(k); ++m) {
        CycElem chi = CycElem::zero(f);
        for (size_t i = 0; i < k; ++i)
            chi += a[i] * CycElem::root_power(f, static_cast<long>(i) * m);
        if (chi.is_zero())
            return Regularity::Irregular;
    }
    return Regularity::Regular;
}

} // namespace weylkit
