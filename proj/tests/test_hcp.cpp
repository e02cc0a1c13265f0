#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylkit/hcp.hpp"
#include "weylkit/io.hpp"

using namespace weylkit;

namespace {

Hcpc gx(unsigned k) { return generator(k, {GenTok::Kind::X, 0, Rat(1)}); }
Hcpc gd(unsigned k) { return generator(k, {GenTok::Kind::D, 0, Rat(1)}); }
Hcpc gi(unsigned k) { return generator(k, {GenTok::Kind::Int, 0, Rat(1)}); }
Hcpc gdel(unsigned k) { return generator(k, {GenTok::Kind::Delta, 0, Rat(1)}); }
Hcpc ga(unsigned k, long i) { return generator(k, {GenTok::Kind::A, i, Rat(1)}); }
Hcpc gb(unsigned k, long j)
{
    return Hcpc::from_hcp(Hcp::b_atom(k, 0, j, CycElem::one(CycField::get(k))));
}
Hcpc gdp(unsigned k, long s)
{
    return Hcpc::from_hcp(Hcp::xa_atom(k, s, 0, 0, CycElem::one(CycField::get(k))));
}
CycElem xi(unsigned k, long e) { return CycElem::root_power(CycField::get(k), e); }

std::vector<GenTok> random_word(std::mt19937_64& rng, unsigned k, size_t len)
{
    std::vector<GenTok> w;
    for (size_t t = 0; t < len; ++t) {
        switch (rng() % 6) {
        case 0: w.push_back({GenTok::Kind::X, 0, Rat(1)}); break;
        case 1: w.push_back({GenTok::Kind::D, 0, Rat(1)}); break;
        case 2: w.push_back({GenTok::Kind::Int, 0, Rat(1)}); break;
        case 3: w.push_back({GenTok::Kind::Delta, 0, Rat(1)}); break;
        case 4: w.push_back({GenTok::Kind::A, static_cast<long>(rng() % k), Rat(1)}); break;
        default:
            w.push_back({GenTok::Kind::Scalar, 0, Rat(static_cast<long>(rng() % 7) - 3)});
            break;
        }
    }
    return w;
}

Hcpc random_hcpc(std::mt19937_64& rng, unsigned k, int atoms)
{
    Hcpc h(k);
    for (int t = 0; t < atoms; ++t) {
        long r = static_cast<long>(rng() % 7) - 3;
        long c = static_cast<long>(rng() % 9) - 4;
        if (c == 0)
            c = 1;
        CycElem coef = CycElem::from_rat(CycField::get(k), Rat(c));
        if (rng() % 4 == 0)
            h.add(Hcp::b_atom(k, r, 1 + static_cast<long>(rng() % 4), coef));
        else
            h.add(Hcp::xa_atom(k, r, static_cast<long>(rng() % 4),
                               static_cast<long>(rng() % k), coef));
    }
    return h;
}

// independent action bound: r + Sdeg_B + k (Sdeg_A + 1) per component
long action_bound(const Hcpc& h)
{
    long b = 0;
    for (const auto& [r, comp] : h.components()) {
        long l = comp.sdeg_a().value_or(0);
        long j = comp.sdeg_b().value_or(0);
        b = std::max(b, r + j + static_cast<long>(h.modulus()) * (l + 1));
    }
    return std::max(b, 0L);
}

bool actions_agree(const Hcpc& a, const Hcpc& b, long mmax)
{
    for (long m = 0; m <= mmax; ++m)
        if (act_monomial(a, m) != act_monomial(b, m))
            return false;
    return true;
}

} // namespace

TEST_CASE("from_word spec examples")
{
    for (unsigned k : {1u, 2u, 3u}) {
        // delta x = 0
        CHECK(hcp_mul(gdel(k), gx(k)).is_zero());
        // Int d = 1 - B_1
        CHECK(hcp_mul(gi(k), gd(k)) == Hcpc::one(k) - gb(k, 1));
        // the word "x" is the atom l=1, r=-1
        Hcpc w = from_word(k, {{GenTok::Kind::X, 0, Rat(1)}});
        REQUIRE(w.components().size() == 1);
        const Hcp& h = w.components().begin()->second;
        CHECK(h.order() == -1);
        CHECK(h.xa().count({1, 0}) == 1);
        // d delta = 0 the other way round
        CHECK(hcp_mul(gd(k), gdel(k)).is_zero());
    }
}

TEST_CASE("hcp_mul spec examples")
{
    // A_1 A_{k-1} = 1
    for (unsigned k : {2u, 3u, 5u})
        CHECK(hcp_mul(ga(k, 1), ga(k, static_cast<long>(k) - 1)) == Hcpc::one(k));
    // Int^2 d^2 = 1 - B_1 - B_2
    for (unsigned k : {1u, 4u})
        CHECK(hcp_mul(hcp_pow(gi(k), 2), hcp_pow(gd(k), 2))
              == Hcpc::one(k) - gb(k, 1) - gb(k, 2));
    // Gamma_2 B_3 = 4 B_3
    for (unsigned k : {1u, 2u, 3u}) {
        Hcpc g2 = gamma_power(k, 2);
        CHECK(hcp_mul(g2, gb(k, 3)) == gb(k, 3).scale(CycElem::from_rat(CycField::get(k), Rat(4))));
        CHECK(hcp_mul(gb(k, 3), g2) == gb(k, 3).scale(CycElem::from_rat(CycField::get(k), Rat(4))));
    }
}

TEST_CASE("subring closure: products stay canonical and order-graded")
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 4);
        Hcpc a = random_hcpc(rng, k, 3), b = random_hcpc(rng, k, 3);
        Hcpc ab = hcp_mul(a, b);
        for (const auto& [r, comp] : ab.components()) {
            CHECK(comp.order() == r);
            CHECK(!comp.is_zero());
            // stored B entries satisfy the normalization constraint
            for (const auto& [j, c] : comp.b()) {
                CHECK(j >= 1);
                if (r < 0)
                    CHECK(j > -r);
            }
        }
        // order additivity bound
        if (ab.ord() && a.ord() && b.ord())
            CHECK(*ab.ord() <= *a.ord() + *b.ord());
    }
}

TEST_CASE("action oracle spec examples")
{
    unsigned k = 3;
    // delta . (3 + x^2) = 3
    Hcpc del = gdel(k);
    auto r1 = act_monomial(del, 0);
    CHECK(r1.at(0) == CycElem::one(CycField::get(k)));
    CHECK(act_monomial(del, 2).empty());
    // Int . x^2 = x^3/3
    auto r2 = act_monomial(gi(k), 2);
    CHECK(r2.at(3) == CycElem::from_rat(CycField::get(k), Rat(1, 3)));
    // A_i . x^m = xi^{im} x^m
    for (long i = 0; i < 3; ++i)
        for (long m = 0; m <= 6; ++m) {
            auto r3 = act_monomial(ga(k, i), m);
            CHECK(r3.at(m) == xi(k, i * m));
        }
}

TEST_CASE("oracle soundness on random words")
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 120; ++t) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 4);
        CycFieldPtr f = CycField::get(k);
        auto word = random_word(rng, k, rng() % 9);
        Hcpc h = from_word(k, word);
        for (long m = 0; m <= 12; ++m) {
            std::map<long, CycElem> direct;
            direct.emplace(m, CycElem::one(f));
            for (size_t idx = word.size(); idx-- > 0;) {
                std::map<long, CycElem> next;
                for (const auto& [deg, c] : direct) {
                    long nd = deg;
                    CycElem nc = c;
                    switch (word[idx].kind) {
                    case GenTok::Kind::X: nd = deg + 1; break;
                    case GenTok::Kind::D:
                        if (deg == 0)
                            nc = CycElem::zero(f);
                        else {
                            nd = deg - 1;
                            nc = c * Rat(deg);
                        }
                        break;
                    case GenTok::Kind::Int:
                        nd = deg + 1;
                        nc = c * Rat(1, deg + 1);
                        break;
                    case GenTok::Kind::Delta:
                        if (deg != 0)
                            nc = CycElem::zero(f);
                        break;
                    case GenTok::Kind::A: nc = c * xi(k, word[idx].a_index * deg); break;
                    case GenTok::Kind::Scalar: nc = c * word[idx].scalar; break;
                    }
                    if (nc.is_zero())
                        continue;
                    auto it = next.find(nd);
                    if (it == next.end())
                        next.emplace(nd, nc);
                    else {
                        it->second += nc;
                        if (it->second.is_zero())
                            next.erase(it);
                    }
                }
                direct = std::move(next);
            }
            CHECK(act_monomial(h, m) == direct);
        }
    }
}

TEST_CASE("canonical-form uniqueness matches the action oracle")
{
    std::mt19937_64 rng(555);
    for (int t = 0; t < 80; ++t) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 3);
        Hcpc a = random_hcpc(rng, k, 3);
        Hcpc b = rng() % 3 == 0 ? a : random_hcpc(rng, k, 3);
        long bound = std::max(action_bound(a), action_bound(b));
        bool eq_canonical = a == b;
        bool eq_action = actions_agree(a, b, bound);
        CHECK(eq_canonical == eq_action);
        // brute force just beyond the bound: no late-only differences
        if (eq_action)
            CHECK(actions_agree(a, b, bound + 8));
    }
}

TEST_CASE("sdeg")
{
    unsigned k = 2;
    // x^2 A_1 d^2 Int^3 : Sdeg_A = 2, Sdeg_B = -inf
    Hcp a = Hcp::xa_atom(k, -3, 2, 1, CycElem::one(CycField::get(k)));
    CHECK(a.sdeg_a() == 2);
    CHECK(!a.sdeg_b());
    // B_3 d : Sdeg_A = -inf, Sdeg_B = 3
    Hcp b = Hcp::b_atom(k, 1, 3, CycElem::one(CycField::get(k)));
    CHECK(!b.sdeg_a());
    CHECK(b.sdeg_b() == 3);

    // product bounds (Sdeg_A additive bound, Sdeg_B case split on ord)
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        unsigned kk = 1 + static_cast<unsigned>(rng() % 3);
        Hcpc h = random_hcpc(rng, kk, 3), m = random_hcpc(rng, kk, 3);
        Hcpc hm = hcp_mul(h, m);
        if (hm.is_zero())
            continue;
        auto sa = hm.sdeg_a();
        if (sa) {
            REQUIRE(h.sdeg_a().has_value());
            REQUIRE(m.sdeg_a().has_value());
            CHECK(*sa <= *h.sdeg_a() + *m.sdeg_a());
        }
        // per-component B bound from the lemma, applied per product pair
        for (const auto& [rh, ch] : h.components())
            for (const auto& [rm, cm] : m.components()) {
                Hcp prod = hcp_mul(ch, cm);
                auto sb = prod.sdeg_b();
                if (!sb)
                    continue;
                long bh = ch.sdeg_b().value_or(LONG_MIN / 2);
                long bm = cm.sdeg_b().value_or(LONG_MIN / 2);
                long bound = rh >= 0 ? std::max(bh, bm)
                                     : std::max({bh, bm - rh, -rh});
                CHECK(*sb <= bound);
            }
        // linear combination bounds
        Hcpc s = h + m;
        if (auto v = s.sdeg_a())
            CHECK(*v <= std::max(h.sdeg_a().value_or(LONG_MIN / 2), m.sdeg_a().value_or(LONG_MIN / 2)));
        if (auto v = s.sdeg_b())
            CHECK(*v <= std::max(h.sdeg_b().value_or(LONG_MIN / 2), m.sdeg_b().value_or(LONG_MIN / 2)));
    }
}

TEST_CASE("rescale to a larger modulus")
{
    // A_{2;1} becomes A_{4;2}
    Hcpc a = ga(2, 1);
    Hcpc b = rescale(a, 4);
    REQUIRE(b.components().size() == 1);
    CHECK(b.components().begin()->second.xa().count({0, 2}) == 1);
    CHECK_THROWS(rescale(a, 3));

    // modulus-1 elements rescale to i = 0 atoms only
    Hcpc one1 = hcp_mul(gx(1), gd(1));
    Hcpc up = rescale(one1, 6);
    for (const auto& [r, c] : up.components())
        for (const auto& [key, v] : c.xa())
            CHECK(key.second == 0);

    // rescale then act agrees with act
    std::mt19937_64 rng(321);
    for (int t = 0; t < 25; ++t) {
        Hcpc h = random_hcpc(rng, 2, 3);
        Hcpc h4 = rescale(h, 4);
        CycFieldPtr f4 = CycField::get(4);
        for (long m = 0; m <= 8; ++m) {
            auto lhs = act_monomial(h, m);
            auto rhs = act_monomial(h4, m);
            CHECK(lhs.size() == rhs.size());
            for (const auto& [deg, c] : lhs)
                CHECK(rhs.at(deg) == c.widen(f4));
        }
    }
}

TEST_CASE("totally free of B")
{
    CHECK(!is_totally_free_b(gb(2, 1)));
    CHECK(is_totally_free_b(gx(2)));
    CHECK(!is_totally_free_b(gi(2)));       // Int d = 1 - B_1
    CHECK(is_totally_free_b(gdp(3, 3)));    // plain d-powers

    // x = x d Int is free: x d Int d = x d (1 - B_1) = x d
    CHECK(is_totally_free_b(hcp_mul(gx(2), gd(2))));

    // cross-check the finite criterion against explicit products over a
    // wide p-range through the action oracle
    std::mt19937_64 rng(888);
    for (int t = 0; t < 40; ++t) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 3);
        Hcpc h = random_hcpc(rng, k, 2);
        bool free = is_totally_free_b(h);
        bool brute = true;
        for (long p = -9; p <= 9 && brute; ++p) {
            Hcpc prod = hcp_mul(h, gdp(k, p));
            if (prod.sdeg_b())
                brute = false;
        }
        CHECK(free == brute);
    }
}

TEST_CASE("totally-free elements form a subring")
{
    std::mt19937_64 rng(4242);
    int done = 0;
    for (int t = 0; t < 200 && done < 30; ++t) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 3);
        Hcpc a = random_hcpc(rng, k, 2), b = random_hcpc(rng, k, 2);
        if (!is_totally_free_b(a) || !is_totally_free_b(b))
            continue;
        ++done;
        CHECK(is_totally_free_b(hcp_mul(a, b)));
        CHECK(is_totally_free_b(a + b));
    }
    CHECK(done >= 20);
}

TEST_CASE("centralizer of d^k")
{
    // k = 2, order -1: basis {(1 - A_1) Int}
    auto basis = centralizer_basis(2, -1);
    REQUIRE(basis.size() == 1);
    Hcp expect(2, -1);
    expect.add_xa(0, 0, CycElem::one(CycField::get(2)));
    expect.add_xa(0, 1, -CycElem::one(CycField::get(2)));
    // the kernel vector is scaled arbitrarily; compare up to scale via both orders
    bool match = false;
    for (const auto& [key, c] : basis[0].xa())
        if (!c.is_zero())
            match = true;
    CHECK(match);
    CHECK(is_central(basis[0], 2));
    Hcpc lin = Hcpc::from_hcp(basis[0]);
    // it must be proportional to (1 - A_1) Int
    CycElem c00 = basis[0].xa().count({0, 0}) ? basis[0].xa().at({0, 0})
                                              : CycElem::zero(CycField::get(2));
    CHECK(Hcpc::from_hcp(expect).scale(c00) == lin);

    // order m >= 0: d^m and A_1 d^m are central
    for (unsigned k : {2u, 3u, 4u})
        for (long m = 0; m <= 2; ++m) {
            CHECK(is_central(gdp(k, m), k));
            CHECK(is_central(hcp_mul(ga(k, 1), gdp(k, m)), k));
        }

    // x d Int = x is not central
    CHECK(!is_central(gx(2), 2));
    CHECK_THROWS(centralizer_basis(3, -3));
}

TEST_CASE("embed monomials")
{
    unsigned k = 2;
    Hcp d3 = embed_monomial(k, 0, 3);
    CHECK(d3.order() == 3);
    CHECK(d3.xa().count({0, 0}) == 1);
    Hcp x2d = embed_monomial(k, 2, 1);
    CHECK(x2d.order() == -1);
    CHECK(x2d.xa().count({2, 0}) == 1);
    // oracle: embed = word
    for (long i = 0; i <= 3; ++i)
        for (long j = 0; j <= 3; ++j) {
            Hcpc w = hcp_mul(hcp_pow(gx(k), static_cast<unsigned>(i)),
                             hcp_pow(gd(k), static_cast<unsigned>(j)));
            CHECK(w == Hcpc::from_hcp(embed_monomial(k, i, j)));
        }
}

TEST_CASE("hcpc text and json round-trips")
{
    std::mt19937_64 rng(31415);
    for (int t = 0; t < 25; ++t) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 4);
        Hcpc h = random_hcpc(rng, k, 4);
        CHECK(parse_hcpc(print_hcpc(h)) == h);
        CHECK(hcpc_from_json(hcpc_to_json(h)) == h);
    }
    Hcpc parsed = parse_hcpc("(1/2)*x^2*A_1*d^2*D^-3 + (-1)*B_2*D^1 @4");
    CHECK(parsed.modulus() == 4);
    CHECK(parsed.component(-1) != nullptr);
    CHECK(parsed.component(1) != nullptr);
}
