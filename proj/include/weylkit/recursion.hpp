#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylkit/newton.hpp"

namespace weylkit {

// Shape data of a subrectangular pair driving the order arithmetic:
// Hm(P) = x^{ln} y^{dn}, Hm(Q) = x^{lm} y^{dm}.
struct PairShape {
    long p = 0, q = 0;
    long d = 0, n = 0, m = 0, l = 0, d2 = 0;
    Rat alpha;
    Rat eps;

    static PairShape from_subrect(const SubrectData& s)
    {
        PairShape sh;
        sh.d = s.d;
        sh.n = s.n;
        sh.m = s.m;
        sh.l = s.l;
        sh.d2 = s.d2;
        sh.p = s.d * s.n;
        sh.q = s.d * s.m;
        sh.eps = s.rate;
        return sh;
    }
};

enum class RecursionStop {
    ZeroOrConstant,
    OrdBelowOne,
    TopsNotProportional,
    RootMissing,
    MaxSteps,
};

struct RecursionStep {
    BivarPoly<Rat> f;   // F_i(X, Y)
    WeylOp<Rat> op;     // Q_i
    long ord = 0;       // v_{0,1}(Q_i)
    long n = 0, m = 0;  // exponents used to form Q_{i+1} (0 on the last step)
    Rat eps;            // epsilon_i
    Rat eps_pow;        // epsilon_i^{n_i}
    long big_m = 0;     // M_i bookkeeping
};

struct RecursionTrace {
    std::vector<RecursionStep> steps;
    RecursionStop stop = RecursionStop::MaxSteps;
};

// Order-reduction recursion Q_{k+1} = Q_k^{n_k} - eps_k^{n_k} P^{m_k} with
// n_k = p/gcd(p, ord Q_k), m_k = ord Q_k/gcd(p, ord Q_k); `fixed_n`
// switches the exponent rule to a constant n (the simplified bookkeeping
// of the proof's final section).
RecursionTrace fi_recursion(const WeylOp<Rat>& p, const WeylOp<Rat>& q, unsigned max_steps = 64,
                            std::optional<long> fixed_n = std::nullopt);

// Orders ord(Q_i) divisible by d2 for all steps but the last.
bool trace_divisibility(const RecursionTrace& t, long d2);

// Twist by Phi_{N,lambda} and read off the (N,1)-top line and the
// (eps,1)-associated part of the image.
struct TwistedTop {
    WeylOp<Rat> twisted;
    BivarPoly<Rat> top_n1;
    BivarPoly<Rat> part_eps1;
    bool monomial = false;
};

TwistedTop twisted_top(const WeylOp<Rat>& f, long n, const Rat& lambda, const Rat& eps);

} // namespace weylkit
