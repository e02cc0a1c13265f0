#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylkit/cyclotomic.hpp"
#include "weylkit/io.hpp"
#include "weylkit/rat.hpp"

using namespace weylkit;

TEST_CASE("rationals stay canonical")
{
    Rat r(6, 4);
    CHECK(numerator(r) == 3);
    CHECK(denominator(r) == 2);
    Rat s = make_rat(BigInt(-3), BigInt(-9));
    CHECK(numerator(s) == 1);
    CHECK(denominator(s) == 3);
    CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK(rat_pow(Rat(-1, 2), -3) == Rat(-8));
}

TEST_CASE("rational nth roots")
{
    CHECK(rat_nth_root(Rat(8, 27), 3) == Rat(2, 3));
    CHECK(rat_nth_root(Rat(-8), 3) == Rat(-2));
    CHECK(!rat_nth_root(Rat(-4), 2));
    CHECK(!rat_nth_root(Rat(2), 2));
    CHECK(rat_nth_root(Rat(1), 5) == Rat(1));
}

TEST_CASE("cyclotomic polynomial degrees are Euler phi")
{
    const unsigned phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
    for (unsigned k = 1; k <= 12; ++k)
        CHECK(CycField::get(k)->degree() == phi[k]);
}

TEST_CASE("root powers: xi^k = 1 and xi^j != 1 below k")
{
    for (unsigned k = 1; k <= 12; ++k) {
        CycFieldPtr f = CycField::get(k);
        CHECK(CycElem::root_power(f, k) == CycElem::one(f));
        for (unsigned j = 1; j < k; ++j)
            CHECK(CycElem::root_power(f, j) != CycElem::one(f));
    }
}

TEST_CASE("spec examples")
{
    // k=3: xi * xi^2 = 1
    CycFieldPtr f3 = CycField::get(3);
    CHECK(CycElem::root_power(f3, 1) * CycElem::root_power(f3, 2) == CycElem::one(f3));

    // k=2: e_1 = 1/(2(xi^{-1}-1)) = -1/4
    CycFieldPtr f2 = CycField::get(2);
    CycElem denom = (CycElem::root_power(f2, -1) - CycElem::one(f2)) * Rat(2);
    CHECK(denom.inverse() == CycElem::from_rat(f2, Rat(-1, 4)));

    // k=3: (1+xi)^{-1} = -xi^2 ... verified by multiplication
    CycElem one_plus = CycElem::one(f3) + CycElem::root_power(f3, 1);
    CycElem inv = one_plus.inverse();
    CHECK(one_plus * inv == CycElem::one(f3));
    // and indeed (1+xi)(-xi) = -xi - xi^2 = 1 since 1 + xi + xi^2 = 0
    CHECK(inv == -CycElem::root_power(f3, 2) * CycElem::root_power(f3, 2));
}

TEST_CASE("field axioms on randomized triples")
{
    std::mt19937_64 rng(42);
    for (unsigned k : {2u, 3u, 4u, 5u, 6u, 12u}) {
        CycFieldPtr f = CycField::get(k);
        auto rnd = [&] {
            std::vector<Rat> c(f->degree());
            for (auto& x : c)
                x = Rat(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
            return CycElem(f, std::move(c));
        };
        for (int t = 0; t < 25; ++t) {
            CycElem a = rnd(), b = rnd(), c = rnd();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            if (!a.is_zero())
                CHECK(a * a.inverse() == CycElem::one(f));
        }
    }
}

TEST_CASE("mismatched conductors error")
{
    CycElem a = CycElem::one(CycField::get(2));
    CycElem b = CycElem::one(CycField::get(3));
    CHECK_THROWS(a + b);
    CHECK_THROWS(CycElem::zero(CycField::get(4)).inverse());
}

TEST_CASE("widening to a conductor multiple")
{
    CycFieldPtr f2 = CycField::get(2), f4 = CycField::get(4);
    // xi_2 = xi_4^2
    CHECK(CycElem::root_power(f2, 1).widen(f4) == CycElem::root_power(f4, 2));
    CHECK_THROWS(CycElem::one(f4).widen(CycField::get(6)));
}

TEST_CASE("cyclotomic printing round-trip")
{
    CycFieldPtr f5 = CycField::get(5);
    CycElem e = CycElem::root_power(f5, 3) * Rat(-7, 3) + CycElem::from_rat(f5, Rat(1, 2));
    CHECK(parse_cyc(print_cyc(e)) == e);
    CHECK(parse_cyc("(1/2 - 7/3*z^3)@5") == e);
}
