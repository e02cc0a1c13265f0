#include "weylkit/recursion.hpp"

namespace weylkit {

namespace {

// g1 = c f1^e for a single scalar c? Returns c when it exists.
std::optional<Rat> power_ratio(const BivarPoly<Rat>& f1, const BivarPoly<Rat>& g1, unsigned e)
{
    BivarPoly<Rat> fe = f1.pow(e);
    if (fe.is_zero() || g1.is_zero())
        return std::nullopt;
    if (support(fe) != support(g1))
        return std::nullopt;
    Rat c = g1.terms().begin()->second / fe.terms().begin()->second;
    if (!(g1 == fe.scale(c)))
        return std::nullopt;
    return c;
}

} // namespace

RecursionTrace fi_recursion(const WeylOp<Rat>& p, const WeylOp<Rat>& q, unsigned max_steps,
                            std::optional<long> fixed_n)
{
    RecursionTrace tr;
    if (p.is_zero() || weights(p).ord < 1)
        throw std::invalid_argument("fi_recursion: ord(P) must be >= 1");
    long p_ord = weights(p).ord;
    Weight w01{Rat(0), Rat(1)};
    BivarPoly<Rat> f01p = top_part(p, w01);

    RecursionStep step;
    step.f = BivarPoly<Rat>::monomial(0, 1, Rat(1)); // F_0 = Y
    step.op = q;
    long m_prev = 0, ord_prev = 0, n_prev = 0;
    long big_m = 0;

    for (unsigned k = 0; k <= max_steps; ++k) {
        if (step.op.is_zero()) {
            step.ord = 0;
            tr.steps.push_back(step);
            tr.stop = RecursionStop::ZeroOrConstant;
            return tr;
        }
        step.ord = weights(step.op).ord;
        if (k == 0)
            big_m = p_ord + step.ord; // M_0 = p + q
        else
            big_m = step.ord - (ord_prev * n_prev - m_prev);
        step.big_m = big_m;
        if (step.ord < 1) {
            tr.steps.push_back(step);
            tr.stop = RecursionStop::OrdBelowOne;
            return tr;
        }
        if (k == max_steps) {
            tr.steps.push_back(step);
            tr.stop = RecursionStop::MaxSteps;
            return tr;
        }

        long g = gcd_long(p_ord, step.ord);
        long nk = fixed_n ? *fixed_n : p_ord / g;
        long mk = fixed_n ? step.ord : step.ord / g;
        // proportionality: f01(Q_k)^{n_k} = c f01(P)^{m_k}
        BivarPoly<Rat> f01q = top_part(step.op, w01);
        auto c = power_ratio(f01p.pow(static_cast<unsigned>(mk)),
                             f01q.pow(static_cast<unsigned>(nk)), 1);
        if (!c) {
            step.n = nk;
            step.m = mk;
            tr.steps.push_back(step);
            tr.stop = RecursionStop::TopsNotProportional;
            return tr;
        }
        auto eps = rat_nth_root(*c, static_cast<unsigned>(nk));
        if (!eps) {
            step.n = nk;
            step.m = mk;
            tr.steps.push_back(step);
            tr.stop = RecursionStop::RootMissing;
            return tr;
        }
        step.n = nk;
        step.m = mk;
        step.eps = *eps;
        step.eps_pow = *c;
        tr.steps.push_back(step);

        RecursionStep next;
        next.f = step.f.pow(static_cast<unsigned>(nk))
            - BivarPoly<Rat>::monomial(mk, 0, *c);
        next.op = weyl_pow(step.op, static_cast<unsigned>(nk), Rat(1))
            - weyl_pow(p, static_cast<unsigned>(mk), Rat(1)).scale(*c);
        ord_prev = step.ord;
        n_prev = nk;
        m_prev = big_m;
        step = next;
    }
    return tr;
}

bool trace_divisibility(const RecursionTrace& t, long d2)
{
    if (d2 <= 0 || t.steps.empty())
        return false;
    for (size_t i = 0; i + 1 < t.steps.size(); ++i)
        if (t.steps[i].ord % d2 != 0)
            return false;
    return true;
}

TwistedTop twisted_top(const WeylOp<Rat>& f, long n, const Rat& lambda, const Rat& eps)
{
    if (lambda.is_zero())
        throw std::invalid_argument("twisted_top: lambda must be nonzero");
    if (Rat(n) <= eps)
        throw std::invalid_argument("twisted_top: requires N > eps");
    if (f.is_zero())
        throw std::domain_error("twisted_top: zero operator");
    TwistedTop out;
    out.twisted = apply_endo(tame_phi<Rat>(n, lambda), f);
    out.top_n1 = top_part(out.twisted, Weight{Rat(n), Rat(1)});
    out.part_eps1 = top_part(out.twisted, Weight{eps, Rat(1)});
    out.monomial = out.part_eps1.terms().size() == 1;
    return out;
}

} // namespace weylkit
