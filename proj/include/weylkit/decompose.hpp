#pragma once

#include <string>
#include <vector>

#include "weylkit/weyl.hpp"

namespace weylkit {

// One tame generator.
struct TameGen {
    enum class Kind { Phi, PhiPrime, Linear } kind = Kind::Phi;
    long n = 0;
    Rat lambda;
    Rat a, b, c, d; // for Kind::Linear

    static TameGen phi(long n, Rat lambda) { return {Kind::Phi, n, std::move(lambda), {}, {}, {}, {}}; }
    static TameGen phi_prime(long n, Rat lambda)
    {
        return {Kind::PhiPrime, n, std::move(lambda), {}, {}, {}, {}};
    }
    static TameGen linear(Rat a, Rat b, Rat c, Rat d)
    {
        return {Kind::Linear, 0, {}, std::move(a), std::move(b), std::move(c), std::move(d)};
    }
};

Endo<Rat> to_endo(const TameGen& g);
TameGen formal_inverse(const TameGen& g);

// Composition of a word, left factor applied last: word_endo({G1, G2})
// realizes G1 after G2, i.e. G1(G2(.)).
Endo<Rat> word_endo(const std::vector<TameGen>& word);

struct DecomposeResult {
    bool ok = false;
    std::vector<TameGen> word;
    std::string reason;
    WeylOp<Rat> stuck_p, stuck_q;
};

// Reduce the image pair (P, Q) = (phi(x), phi(d)) to (x, d) by tame moves
// that strictly decrease the total (1,1)-degree, and return the word
// recomposing phi. Failure returns the certificate with the stuck pair.
DecomposeResult decompose_automorphism(const WeylOp<Rat>& p, const WeylOp<Rat>& q,
                                       unsigned max_steps = 64);

} // namespace weylkit
