#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylkit/io.hpp"
#include "weylkit/weyl.hpp"

using namespace weylkit;

namespace {

WeylOp<Rat> W(const std::string& s) { return parse_weyl(s); }

WeylOp<Rat> random_op(std::mt19937_64& rng, int max_terms, long max_exp)
{
    WeylOp<Rat> p;
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        long c = static_cast<long>(rng() % 9) - 4;
        p.add_term(static_cast<long>(rng() % (max_exp + 1)), static_cast<long>(rng() % (max_exp + 1)),
                   Rat(c == 0 ? 1 : c));
    }
    return p;
}

// action composition as the independent multiplication oracle
std::map<long, Rat> act_poly(const WeylOp<Rat>& p, const std::map<long, Rat>& f)
{
    std::map<long, Rat> out;
    for (const auto& [deg, c] : f)
        for (const auto& [d2, c2] : act_monomial(p, deg)) {
            Rat v = c * c2;
            auto it = out.find(d2);
            if (it == out.end())
                out.emplace(d2, v);
            else {
                it->second += v;
                if (it->second.is_zero())
                    out.erase(it);
            }
        }
    return out;
}

} // namespace

TEST_CASE("defining relation and spec products")
{
    CHECK(weyl_mul(W("d"), W("x")) == W("x*d + 1"));
    CHECK(weyl_mul(W("d^2"), W("x^2")) == W("x^2*d^2 + 4*x*d + 2"));
    CHECK(weyl_mul(W("x*d"), W("x*d")) == W("x^2*d^2 + x*d"));
}

TEST_CASE("commutators")
{
    CHECK(commutator(W("d"), W("x")) == W("1"));
    CHECK(commutator(W("d^2"), W("x")) == W("2*d"));
    // [d + l x^n, x] = 1 for the primed tame images
    CHECK(commutator(W("d + 5*x^3"), W("x")) == W("1"));
}

TEST_CASE("weights triple")
{
    WeightTriple w = weights(W("x^5*d^2 + d^3"));
    CHECK(w.ord == 3);
    CHECK(w.ord_x == 5);
    CHECK(w.bord == 3);
    w = weights(W("x^5*d^2"));
    CHECK(w.ord == 2);
    CHECK(w.ord_x == 5);
    CHECK(w.bord == -3);
    // monic P of d-degree n has bord = ord = n
    w = weights(W("d^4 + x^2*d + 1"));
    CHECK(w.bord == w.ord);
    CHECK_THROWS(weights(WeylOp<Rat>()));
}

TEST_CASE("associativity on random triples")
{
    std::mt19937_64 rng(123);
    for (int t = 0; t < 25; ++t) {
        WeylOp<Rat> a = random_op(rng, 6, 4), b = random_op(rng, 6, 4), c = random_op(rng, 6, 4);
        CHECK(weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c)));
    }
}

TEST_CASE("faithful action oracle")
{
    std::mt19937_64 rng(321);
    for (int t = 0; t < 25; ++t) {
        WeylOp<Rat> a = random_op(rng, 5, 4), b = random_op(rng, 5, 4);
        // multiplication agrees with composed action
        WeylOp<Rat> ab = weyl_mul(a, b);
        for (long m = 0; m <= 9; ++m) {
            std::map<long, Rat> f;
            f.emplace(m, Rat(1));
            CHECK(act_monomial(ab, m) == act_poly(a, act_monomial(b, m)));
        }
        // faithfulness: distinct ops differ on some monomial up to the bound
        if (!(a == b)) {
            long bound = weights(a + b).ord_x + weights(a + b).ord;
            bool differ = false;
            for (long m = 0; m <= bound && !differ; ++m)
                differ = act_monomial(a, m) != act_monomial(b, m);
            CHECK(differ);
        }
    }
}

TEST_CASE("leading data")
{
    auto l1 = leading_data(W("d^3 + x*d"));
    CHECK(l1.ord == 3);
    CHECK(l1.monic);
    auto l2 = leading_data(W("2*d^2 + x*d^2"));
    CHECK(!l2.elliptic);
    auto l3 = leading_data(W("5*d^4 + x"));
    CHECK(l3.elliptic);
    CHECK(!l3.monic);
}

TEST_CASE("tame generators")
{
    Endo<Rat> e = tame_phi<Rat>(2, Rat(1));
    CHECK(e.verified);
    CHECK(e.img_x == W("x + d^2"));
    CHECK(e.img_d == W("d"));
    CHECK(tame_linear<Rat>(Rat(1), Rat(0), Rat(0), Rat(1)).img_x == W("x"));
    CHECK_THROWS(tame_linear<Rat>(Rat(2), Rat(0), Rat(0), Rat(1))); // ad - bc = 2
}

TEST_CASE("apply and compose endomorphisms")
{
    Endo<Rat> id = identity_endo(Rat(1));
    WeylOp<Rat> p = W("3*x^2*d + 1/2*d^3 + 1");
    CHECK(apply_endo(id, p) == p);

    // Phi'_{2,1}: x d -> x(d + x^2) = x d + x^3
    CHECK(apply_endo(tame_phi_prime<Rat>(2, Rat(1)), W("x*d")) == W("x*d + x^3"));

    // Phi_{1,1}: x -> x + d
    CHECK(apply_endo(tame_phi<Rat>(1, Rat(1)), W("x")) == W("x + d"));

    // (Phi'_{1,1} . Phi_{2,1})(x) = x + (d + x)^2
    Endo<Rat> c = compose_endo(tame_phi_prime<Rat>(1, Rat(1)), tame_phi<Rat>(2, Rat(1)));
    CHECK(c.img_x == W("x") + weyl_mul(W("d + x"), W("d + x")));

    // inverse pairs compose to the identity
    for (long n = 0; n <= 3; ++n) {
        Endo<Rat> f = compose_endo(tame_phi<Rat>(n, Rat(2)), tame_phi<Rat>(n, Rat(-2)));
        CHECK(f.img_x == W("x"));
        CHECK(f.img_d == W("d"));
    }
    // apply_endo preserves the commutator for verified endomorphisms
    std::mt19937_64 rng(5);
    Endo<Rat> g = compose_endo(tame_phi<Rat>(2, Rat(1)), tame_phi_prime<Rat>(3, Rat(-1)));
    CHECK(g.verified);
    CHECK(commutator(g.img_d, g.img_x) == W("1"));
    // multiplicativity on a random operator pair
    WeylOp<Rat> a = random_op(rng, 4, 3), b = random_op(rng, 4, 3);
    CHECK(apply_endo(g, weyl_mul(a, b)) == weyl_mul(apply_endo(g, a), apply_endo(g, b)));
}

TEST_CASE("D1 operators")
{
    size_t prec = 12;
    D1Op<Rat> p = D1Op<Rat>::from_weyl(W("d^2 - x"), Rat(0), prec);
    CHECK(p.ord() == 2);
    CHECK(p.monic());
    D1Op<Rat> q = D1Op<Rat>::from_weyl(W("x*d + 2"), Rat(0), prec);
    D1Op<Rat> pq = p * q;
    // compare against the exact Weyl product embedded
    D1Op<Rat> expect = D1Op<Rat>::from_weyl(weyl_mul(W("d^2 - x"), W("x*d + 2")), Rat(0), prec);
    CHECK(pq.ord() == expect.ord());
    for (size_t j = 0; j <= static_cast<size_t>(pq.ord()); ++j)
        CHECK(pq.coeff(j) == expect.coeff(j));
    CHECK(!D1Op<Rat>::from_weyl(W("2 + 0*d"), Rat(0), 4).is_zero());
}

TEST_CASE("operator text and json round-trips")
{
    WeylOp<Rat> p = W("3*x^2*d + 1/2*d^3 + 1 - x");
    CHECK(parse_weyl(print_weyl(p)) == p);
    CHECK(weyl_from_json(weyl_to_json(p)) == p);
    CHECK(print_weyl(W("0")) == "0");
    CHECK_THROWS_AS(parse_weyl("x^" ), ParseError);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        WeylOp<Rat> r = random_op(rng, 7, 6);
        CHECK(parse_weyl(print_weyl(r)) == r);
        CHECK(weyl_from_json(weyl_to_json(r)) == r);
    }
}
