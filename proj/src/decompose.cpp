#include "weylkit/decompose.hpp"

#include "weylkit/newton.hpp"

namespace weylkit {

Endo<Rat> to_endo(const TameGen& g)
{
    switch (g.kind) {
    case TameGen::Kind::Phi:
        return tame_phi<Rat>(g.n, g.lambda);
    case TameGen::Kind::PhiPrime:
        return tame_phi_prime<Rat>(g.n, g.lambda);
    case TameGen::Kind::Linear:
        return tame_linear<Rat>(g.a, g.b, g.c, g.d);
    }
    throw std::logic_error("to_endo: unknown generator kind");
}

TameGen formal_inverse(const TameGen& g)
{
    switch (g.kind) {
    case TameGen::Kind::Phi:
        return TameGen::phi(g.n, -g.lambda);
    case TameGen::Kind::PhiPrime:
        return TameGen::phi_prime(g.n, -g.lambda);
    case TameGen::Kind::Linear:
        return TameGen::linear(g.d, -g.b, -g.c, g.a);
    }
    throw std::logic_error("formal_inverse: unknown generator kind");
}

Endo<Rat> word_endo(const std::vector<TameGen>& word)
{
    Endo<Rat> e = identity_endo(Rat(1));
    for (const TameGen& g : word)
        e = compose_endo(e, to_endo(g));
    return e;
}

namespace {

long v11(const WeylOp<Rat>& p)
{
    WeightTriple w = weights(p);
    (void)w;
    return weight_degree(p, Weight{Rat(1), Rat(1)}).first.convert_to<long>();
}

// g1 = c f1^e exactly? (supports match and uniform ratio)
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

// Affine operator coefficients c_d d + c_x x + c_1; nullopt when the
// support reaches outside {1, x, d}.
struct AffineCoeffs {
    Rat cd, cx, c1;
};
std::optional<AffineCoeffs> affine_coeffs(const WeylOp<Rat>& p)
{
    AffineCoeffs a{Rat(0), Rat(0), Rat(0)};
    for (const auto& [k, c] : p.terms()) {
        if (k == std::pair<long, long>{0, 1})
            a.cd = c;
        else if (k == std::pair<long, long>{1, 0})
            a.cx = c;
        else if (k == std::pair<long, long>{0, 0})
            a.c1 = c;
        else
            return std::nullopt;
    }
    return a;
}

} // namespace

DecomposeResult decompose_automorphism(const WeylOp<Rat>& p, const WeylOp<Rat>& q,
                                       unsigned max_steps)
{
    DecomposeResult res;
    const WeylOp<Rat> gen_x = WeylOp<Rat>::var_x(Rat(1));
    const WeylOp<Rat> gen_d = WeylOp<Rat>::var_d(Rat(1));
    WeylOp<Rat> cp = p, cq = q;

    auto fail = [&](const std::string& why) {
        res.ok = false;
        res.reason = why;
        res.stuck_p = cp;
        res.stuck_q = cq;
        return res;
    };

    if (!(commutator(cq, cp) == WeylOp<Rat>::constant(Rat(1))))
        return fail("not an endomorphism: [Q, P] != 1");

    std::vector<TameGen> moves; // right-composed onto phi, in order
    const Weight w11{Rat(1), Rat(1)};

    for (unsigned step = 0; step < max_steps; ++step) {
        if (cp == gen_x && cq == gen_d) {
            res.ok = true;
            for (size_t i = moves.size(); i-- > 0;)
                res.word.push_back(formal_inverse(moves[i]));
            return res;
        }
        if (cp.is_zero() || cq.is_zero())
            return fail("image degenerated to zero");
        long v = v11(cp), w = v11(cq);
        if (v == 0 || w == 0)
            return fail("constant image");

        if (v == 1 && w == 1) {
            auto ap = affine_coeffs(cp), aq = affine_coeffs(cq);
            if (!ap || !aq)
                return fail("degree-1 images are not affine");
            // cq = a d + b x + f, cp = c d + d' x + e; [Q,P] = 1 gives ad' - bc = 1.
            TameGen lin = TameGen::linear(aq->cd, aq->cx, ap->cd, ap->cx);
            TameGen inv = formal_inverse(lin);
            Endo<Rat> e = to_endo(inv);
            // right-compose: phi . inv, images via substitution of inv's images
            WeylOp<Rat> np = apply_endo(Endo<Rat>{cp, cq, true}, e.img_x);
            WeylOp<Rat> nq = apply_endo(Endo<Rat>{cp, cq, true}, e.img_d);
            cp = np;
            cq = nq;
            moves.push_back(inv);
            // strip translations
            auto ap2 = affine_coeffs(cp), aq2 = affine_coeffs(cq);
            if (!ap2 || !aq2 || !(ap2->cx == Rat(1)) || !(aq2->cd == Rat(1)))
                return fail("linear normalization failed");
            if (!ap2->c1.is_zero()) {
                moves.push_back(TameGen::phi(0, -ap2->c1));
                cp = cp - WeylOp<Rat>::constant(ap2->c1);
            }
            if (!aq2->c1.is_zero()) {
                moves.push_back(TameGen::phi_prime(0, -aq2->c1));
                cq = cq - WeylOp<Rat>::constant(aq2->c1);
            }
            continue;
        }

        BivarPoly<Rat> f1 = top_part(cp, w11), g1 = top_part(cq, w11);
        if (v <= w) {
            if (w % v != 0)
                return fail("degree of Q not a multiple of degree of P");
            unsigned e = static_cast<unsigned>(w / v);
            auto c = power_ratio(f1, g1, e);
            if (!c)
                return fail("tops not proportional (Q side)");
            // phi . Phi'_{e,-c}: Q <- Q - c P^e
            moves.push_back(TameGen::phi_prime(static_cast<long>(e), -*c));
            cq = cq - weyl_pow(cp, e, Rat(1)).scale(*c);
        } else {
            if (v % w != 0)
                return fail("degree of P not a multiple of degree of Q");
            unsigned e = static_cast<unsigned>(v / w);
            auto c = power_ratio(g1, f1, e);
            if (!c)
                return fail("tops not proportional (P side)");
            moves.push_back(TameGen::phi(static_cast<long>(e), -*c));
            cp = cp - weyl_pow(cq, e, Rat(1)).scale(*c);
        }
    }
    return fail("no strictly decreasing move found within the step budget");
}

} // namespace weylkit
