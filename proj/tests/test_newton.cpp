#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylkit/io.hpp"
#include "weylkit/newton.hpp"

using namespace weylkit;

namespace {
WeylOp<Rat> W(const std::string& s) { return parse_weyl(s); }
BivarPoly<Rat> B(const std::string& s) { return BivarPoly<Rat>::from_weyl(parse_weyl(s)); }

WeylOp<Rat> random_op(std::mt19937_64& rng, int max_terms, long max_exp)
{
    WeylOp<Rat> p;
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        long c = static_cast<long>(rng() % 9) - 4;
        p.add_term(static_cast<long>(rng() % (max_exp + 1)), static_cast<long>(rng() % (max_exp + 1)),
                   Rat(c == 0 ? 2 : c));
    }
    return p;
}
} // namespace

TEST_CASE("weight degree and top sets")
{
    auto [v, top] = weight_degree(B("x^2*d^3"), Weight{Rat(1), Rat(1)});
    CHECK(v == Rat(5));
    CHECK(top == std::set<LatticePoint>{{2, 3}});

    // v_{0,1}(P) = ord(P)
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        WeylOp<Rat> p = random_op(rng, 6, 5);
        CHECK(weight_value(BivarPoly<Rat>::from_weyl(p), Weight{Rat(0), Rat(1)})
              == Rat(weights(p).ord));
    }

    auto [v2, top2] = weight_degree(B("x^2 + d"), Weight{Rat(2), Rat(3)});
    CHECK(v2 == Rat(4));
    CHECK(top2 == std::set<LatticePoint>{{2, 0}});
    CHECK_THROWS(weight_degree(BivarPoly<Rat>(), Weight{Rat(1), Rat(1)}));
}

TEST_CASE("top part")
{
    CHECK(top_part(B("x^2*d + x*d + 1"), Weight{Rat(1), Rat(1)}) == B("x^2*d"));
    CHECK(top_part(B("x^2 + d^2"), Weight{Rat(1), Rat(1)}) == B("x^2 + d^2"));
    // f_{0,1}(P) = HT(P) y^{ord}
    WeylOp<Rat> p = W("5*x^2*d^3 + x*d^3 + x^4*d + 2");
    auto ht = leading_data(p);
    BivarPoly<Rat> expect;
    for (const auto& [i, c] : ht.ht)
        expect.add_term(i, ht.ord, c);
    CHECK(top_part(p, Weight{Rat(0), Rat(1)}) == expect);
}

TEST_CASE("poisson bracket")
{
    CHECK(poisson(B("d"), B("x")) == B("-1"));
    BivarPoly<Rat> f = B("x^2*d + 3*x*d^4");
    CHECK(poisson(f, f).is_zero());
    // {x^a y^b, x^c y^d} = (ad - bc) x^{a+c-1} y^{b+d-1}
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b)
            for (long c = 0; c <= 3; ++c)
                for (long d = 0; d <= 3; ++d) {
                    BivarPoly<Rat> lhs =
                        poisson(BivarPoly<Rat>::monomial(a, b, Rat(1)),
                                BivarPoly<Rat>::monomial(c, d, Rat(1)));
                    BivarPoly<Rat> rhs;
                    if (a * d - b * c != 0 && a + c >= 1 && b + d >= 1)
                        rhs = BivarPoly<Rat>::monomial(a + c - 1, b + d - 1, Rat(a * d - b * c));
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("dixmier split examples")
{
    // P = d, Q = x at sigma = rho = 1: T = 1, U = 0
    auto rep = dixmier_split(W("d"), W("x"), Weight{Rat(1), Rat(1)});
    CHECK(rep.t == W("1"));
    CHECK(rep.u.is_zero());
    CHECK(rep.assoc_is_poisson);
    CHECK(rep.product_top_law);

    // commuting powers: T = 0 and proportional tops
    auto rep2 = dixmier_split(W("d^2"), W("d^3"), Weight{Rat(1), Rat(2)});
    CHECK(rep2.t_zero);
    CHECK(proportional_tops(B("d^2"), B("d^3"), 4, 6));

    // f_{1,1}(PQ) = f1 g1 for P = x, Q = d
    auto rep3 = dixmier_split(W("x"), W("d"), Weight{Rat(1), Rat(1)});
    CHECK(rep3.product_top_law);
    CHECK(rep3.t == W("-1"));

    CHECK_THROWS(dixmier_split(W("x"), W("d"), Weight{Rat(1), Rat(-1)}));
}

TEST_CASE("dixmier laws on random pairs")
{
    std::mt19937_64 rng(77);
    for (int t = 0; t < 60; ++t) {
        WeylOp<Rat> p = random_op(rng, 6, 4), q = random_op(rng, 6, 4);
        Weight w{Rat(1 + static_cast<long>(rng() % 3)), Rat(1 + static_cast<long>(rng() % 3))};
        auto rep = dixmier_split(p, q, w);
        CHECK(rep.product_value_law);
        CHECK(rep.product_top_law);
        CHECK(rep.assoc_is_poisson);
        if (!rep.u.is_zero())
            CHECK(weight_value(BivarPoly<Rat>::from_weyl(rep.u), w) < rep.level);
        long v = rep.v.convert_to<long>(), ww = rep.w.convert_to<long>();
        CHECK(rep.t_zero == rep.poisson_zero);
        CHECK(rep.t_zero == proportional_tops(top_part(p, w), top_part(q, w), v, ww));
    }
}

TEST_CASE("proportional tops")
{
    CHECK(proportional_tops(B("x*d^2"), B("x^2*d^4"), 3, 6));
    CHECK(!proportional_tops(B("d"), B("x"), 2, 3));
}

TEST_CASE("subrectangular data")
{
    // Hm(P) = x^2 y^4, Hm(Q) = x y^2 -> d=2, l=1, n=2, m=1, d2=2, eps=2
    WeylOp<Rat> p = W("x^2*d^4 + x*d + 1");
    WeylOp<Rat> q = W("x*d^2 + 3");
    auto s = subrect_data(p, q);
    REQUIRE(s.has_value());
    CHECK(s->d == 2);
    CHECK(s->l == 1);
    CHECK(s->n == 2);
    CHECK(s->m == 1);
    CHECK(s->d2 == 2);
    CHECK(s->rate == Rat(2));

    CHECK(!is_subrectangular(W("x^2 + d^2")));
    CHECK(is_subrectangular(W("x^3*d^2 + x*d")));

    // product closure of highest monomials
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        WeylOp<Rat> a = random_op(rng, 4, 3);
        WeylOp<Rat> b = random_op(rng, 4, 3);
        a.add_term(weights(a).ord_x + 1, weights(a).ord + 1, Rat(1));
        b.add_term(weights(b).ord_x + 1, weights(b).ord + 1, Rat(1));
        if (!is_subrectangular(a) || !is_subrectangular(b))
            continue;
        auto ha = highest_monomial(a), hb = highest_monomial(b);
        auto hab = highest_monomial(weyl_mul(a, b));
        REQUIRE(hab.has_value());
        CHECK(hab->first == ha->first + hb->first);
        CHECK(hab->second == ha->second + hb->second);
    }
}

TEST_CASE("corners")
{
    // f_{0,1} = (1+x)^2 y^3: st_01 = (2,3), en_01 = (0,3)
    WeylOp<Rat> p = W("d^3 + 2*x*d^3 + x^2*d^3 + x^5*d");
    Corners c = corners(p);
    CHECK(c.st_01 == LatticePoint{2, 3});
    CHECK(c.en_01 == LatticePoint{0, 3});
    CHECK(c.en_10 == LatticePoint{5, 1});
    CHECK(c.st_10 == LatticePoint{5, 1});

    Corners m = corners(W("7*x^3*d^4"));
    CHECK(m.en_10 == LatticePoint{3, 4});
    CHECK(m.st_10 == LatticePoint{3, 4});
    CHECK(m.en_01 == LatticePoint{3, 4});
    CHECK(m.st_01 == LatticePoint{3, 4});

    // subrectangular: en_10 = st_01 = Hm exponents
    WeylOp<Rat> s = W("x^2*d^4 + x*d + d^2");
    CHECK(corners(s).en_10 == corners(s).st_01);
    CHECK(corners(s).en_10 == LatticePoint{2, 4});
}

TEST_CASE("convex hull")
{
    PolygonData d = polygon_data(B("1 + x^4 + d^4 + x*d + x^2*d^2"));
    CHECK(d.points.size() == 5);
    CHECK(d.hull.size() == 3); // (0,0), (4,0), (0,4); (1,1) and (2,2) interior
}

TEST_CASE("rate independence across weights")
{
    WeylOp<Rat> p = W("x^2*d^4 + x*d^2 + 1");
    WeylOp<Rat> q = W("x*d^2 + x*d");
    for (auto w : {Weight{Rat(1), Rat(1)}, Weight{Rat(3), Rat(1)}, Weight{Rat(2), Rat(5)}}) {
        auto tp = top_part(p, w), tq = top_part(q, w);
        REQUIRE(tp.terms().size() == 1);
        REQUIRE(tq.terms().size() == 1);
        auto kp = tp.terms().begin()->first;
        auto kq = tq.terms().begin()->first;
        CHECK(Rat(kp.first) * Rat(kq.second) == Rat(kq.first) * Rat(kp.second));
        CHECK(Rat(kp.second) == Rat(2) * Rat(kq.second)); // eps = 2
    }
}
