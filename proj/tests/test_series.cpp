#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylkit/io.hpp"
#include "weylkit/series.hpp"

using namespace weylkit;

namespace {
QSeries from_coeffs(std::vector<long> v)
{
    std::vector<Rat> c;
    for (long x : v)
        c.emplace_back(x);
    return QSeries(std::move(c));
}
} // namespace

TEST_CASE("geometric inverse")
{
    // (1 - x)^{-1} mod x^4 = 1 + x + x^2 + x^3
    QSeries s = from_coeffs({1, -1, 0, 0});
    CHECK(s.inverse() == from_coeffs({1, 1, 1, 1}));
    CHECK_THROWS(from_coeffs({0, 1}).inverse());
}

TEST_CASE("derive and antiderive")
{
    QSeries s = from_coeffs({0, 2, 0, 1, 0, 0}); // x^3 + 2x
    CHECK(s.derive() == from_coeffs({2, 0, 3, 0, 0}));
    // antiderive(x^m) = x^{m+1}/(m+1)
    for (size_t m = 0; m <= 5; ++m) {
        QSeries xm = QSeries::monomial(Rat(1), m, 8);
        QSeries ad = xm.antiderive();
        CHECK(ad[m + 1] == Rat(1, static_cast<long>(m) + 1));
        CHECK(ad.valuation() == m + 1);
    }
    CHECK(from_coeffs({1, 1}).derive().precision() == 1);
    CHECK(from_coeffs({1, 1}).antiderive().precision() == 3);
}

TEST_CASE("multiplication is associative and commutative to precision")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        auto rnd = [&] {
            std::vector<Rat> c(6 + rng() % 4);
            for (auto& x : c)
                x = Rat(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
            return QSeries(std::move(c));
        };
        QSeries a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
    }
}

TEST_CASE("nth root")
{
    // sqrt(1 + 2x + x^2) = 1 + x
    QSeries s = from_coeffs({1, 2, 1, 0, 0});
    CHECK(s.nth_root(2) == from_coeffs({1, 1, 0, 0, 0}));
    // (1+x)^{1/3} mod x^3 = 1 + x/3 - x^2/9
    QSeries r = from_coeffs({1, 1, 0}).nth_root(3);
    CHECK(r[0] == Rat(1));
    CHECK(r[1] == Rat(1, 3));
    CHECK(r[2] == Rat(-1, 9));
    CHECK_THROWS(from_coeffs({2, 0}).nth_root(2));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        std::vector<Rat> c(7, Rat(0));
        c[0] = Rat(1);
        for (size_t i = 1; i < c.size(); ++i)
            c[i] = Rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
        QSeries s2(std::move(c));
        unsigned d = 2 + static_cast<unsigned>(rng() % 5);
        CHECK(s2.nth_root(d).pow(d) == s2);
    }
}

TEST_CASE("exponential")
{
    CHECK(QSeries::constant(Rat(0), 5).exponential() == QSeries::constant(Rat(1), 5));
    QSeries e = QSeries::monomial(Rat(1), 1, 3).exponential();
    CHECK(e[0] == Rat(1));
    CHECK(e[1] == Rat(1));
    CHECK(e[2] == Rat(1, 2));
    QSeries x = QSeries::monomial(Rat(1), 1, 9);
    CHECK(x.exponential() * (-x).exponential() == QSeries::constant(Rat(1), 9));
    CHECK_THROWS(QSeries::constant(Rat(1), 4).exponential());
}

TEST_CASE("composition")
{
    // (1/(1-x)) . (x^2) = 1 + x^2 + x^4 + ...
    QSeries inv = from_coeffs({1, -1, 0, 0, 0, 0}).inverse();
    QSeries x2 = QSeries::monomial(Rat(1), 2, 6);
    QSeries c = inv.compose(x2);
    CHECK(c == from_coeffs({1, 0, 1, 0, 1, 0}));
    CHECK(c.precision() == 6);
    CHECK_THROWS(inv.compose(from_coeffs({1, 1})));
}

TEST_CASE("valuation semantics")
{
    CHECK(from_coeffs({0, 0, 1, 1}).valuation() == 2);
    CHECK(from_coeffs({3, 0}).valuation() == 0);
    CHECK(!QSeries::constant(Rat(0), 6).valuation()); // ">= 6"
}

TEST_CASE("series printing round-trip")
{
    QSeries s = from_coeffs({1, 0, -3, 7});
    CHECK(print_series(s) == "1 - 3*x^2 + 7*x^3 + O(x^4)");
    CHECK(parse_series(print_series(s)) == s);
    CHECK(parse_series("0 + O(x^3)").is_zero());
    CHECK(parse_series("1/2*x + O(x^5)")[1] == Rat(1, 2));
}
