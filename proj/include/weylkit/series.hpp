#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "weylkit/scalar.hpp"

namespace weylkit {

// Truncated formal power series: coefficients of x^0..x^{M-1} for a stated
// precision M >= 1. Values are immutable; every operation returns a fresh
// series and propagates precision by the min rule, never inventing
// coefficients past what the inputs determine.
template <typename S>
class TruncSeries {
public:
    explicit TruncSeries(std::vector<S> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty())
            throw std::invalid_argument("TruncSeries: precision must be positive");
    }

    static TruncSeries constant(const S& value, size_t precision)
    {
        std::vector<S> c(precision, scalar_zero(value));
        c[0] = value;
        return TruncSeries(std::move(c));
    }

    // c * x^p mod x^M
    static TruncSeries monomial(const S& value, size_t p, size_t precision)
    {
        std::vector<S> c(precision, scalar_zero(value));
        if (p < precision)
            c[p] = value;
        return TruncSeries(std::move(c));
    }

    size_t precision() const { return c_.size(); }
    const S& operator[](size_t i) const { return c_.at(i); }
    const std::vector<S>& coeffs() const { return c_; }
    const S& sample() const { return c_[0]; }

    bool is_zero() const
    {
        for (const auto& c : c_)
            if (!scalar_is_zero(c))
                return false;
        return true;
    }

    // Least index with a nonzero coefficient; nullopt means ">= M".
    std::optional<size_t> valuation() const
    {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!scalar_is_zero(c_[i]))
                return i;
        return std::nullopt;
    }

    TruncSeries truncate(size_t m) const
    {
        if (m == 0)
            throw std::invalid_argument("TruncSeries::truncate: precision must stay positive");
        if (m >= c_.size())
            return *this;
        return TruncSeries(std::vector<S>(c_.begin(), c_.begin() + m));
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
    {
        size_t m = std::min(a.precision(), b.precision());
        std::vector<S> c(a.c_.begin(), a.c_.begin() + m);
        for (size_t i = 0; i < m; ++i)
            c[i] += b.c_[i];
        return TruncSeries(std::move(c));
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b)
    {
        size_t m = std::min(a.precision(), b.precision());
        std::vector<S> c(a.c_.begin(), a.c_.begin() + m);
        for (size_t i = 0; i < m; ++i)
            c[i] -= b.c_[i];
        return TruncSeries(std::move(c));
    }

    TruncSeries operator-() const
    {
        std::vector<S> c = c_;
        for (auto& x : c)
            x = scalar_zero(x) - x;
        return TruncSeries(std::move(c));
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        size_t m = std::min(a.precision(), b.precision());
        std::vector<S> c(m, scalar_zero(a.c_[0]));
        for (size_t i = 0; i < m; ++i) {
            if (scalar_is_zero(a.c_[i]))
                continue;
            for (size_t j = 0; i + j < m && j < b.precision(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return TruncSeries(std::move(c));
    }

    TruncSeries scale(const S& f) const
    {
        std::vector<S> c = c_;
        for (auto& x : c)
            x = x * f;
        return TruncSeries(std::move(c));
    }

    // Multiplication by x^t; precision grows to M + t since nothing below
    // x^t is unknown.
    TruncSeries shift(size_t t) const
    {
        std::vector<S> c(c_.size() + t, scalar_zero(c_[0]));
        for (size_t i = 0; i < c_.size(); ++i)
            c[i + t] = c_[i];
        return TruncSeries(std::move(c));
    }

    TruncSeries inverse() const
    {
        if (scalar_is_zero(c_[0]))
            throw std::domain_error("TruncSeries::inverse: zero constant term");
        S inv0 = scalar_inverse(c_[0]);
        std::vector<S> r(c_.size(), scalar_zero(c_[0]));
        r[0] = inv0;
        for (size_t n = 1; n < c_.size(); ++n) {
            S acc = scalar_zero(c_[0]);
            for (size_t j = 1; j <= n; ++j)
                acc += c_[j] * r[n - j];
            r[n] = scalar_zero(c_[0]) - acc * inv0;
        }
        return TruncSeries(std::move(r));
    }

    TruncSeries derive() const
    {
        if (c_.size() < 2)
            throw std::domain_error("TruncSeries::derive: precision exhausted");
        std::vector<S> c(c_.size() - 1, scalar_zero(c_[0]));
        for (size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = c_[i] * scalar_from_rat(c_[0], Rat(static_cast<long>(i)));
        return TruncSeries(std::move(c));
    }

    TruncSeries antiderive() const
    {
        std::vector<S> c(c_.size() + 1, scalar_zero(c_[0]));
        for (size_t i = 0; i < c_.size(); ++i)
            c[i + 1] = c_[i] * scalar_from_rat(c_[0], Rat(1, static_cast<long>(i + 1)));
        return TruncSeries(std::move(c));
    }

    // a.compose(b) = a(b(x)); requires b(0) = 0. Result precision is
    // min(Ma, Mb): coefficient n depends on a_0..a_n and b_1..b_n only.
    TruncSeries compose(const TruncSeries& b) const
    {
        if (!scalar_is_zero(b.c_[0]))
            throw std::domain_error("TruncSeries::compose: inner series must have zero constant term");
        size_t m = std::min(precision(), b.precision());
        TruncSeries bt = b.truncate(m);
        TruncSeries acc = TruncSeries::constant(scalar_zero(c_[0]), m);
        // Horner from the top coefficient down.
        for (size_t idx = m; idx-- > 0;) {
            acc = acc * bt;
            acc = acc + TruncSeries::constant(c_[idx], m);
        }
        return acc;
    }

    TruncSeries pow(unsigned e) const
    {
        TruncSeries acc = TruncSeries::constant(scalar_one(c_[0]), precision());
        TruncSeries p = *this;
        while (e) {
            if (e & 1)
                acc = acc * p;
            e >>= 1;
            if (e)
                p = p * p;
        }
        return acc;
    }

    // d-th root of a series with constant term exactly 1.
    TruncSeries nth_root(unsigned d) const
    {
        if (d == 0)
            throw std::invalid_argument("TruncSeries::nth_root: zeroth root");
        S one = scalar_one(c_[0]);
        if (!(c_[0] == one))
            throw std::domain_error("TruncSeries::nth_root: constant term must be 1");
        size_t m = precision();
        std::vector<S> r(m, scalar_zero(c_[0]));
        r[0] = one;
        S dinv = scalar_inverse(scalar_from_rat(c_[0], Rat(static_cast<long>(d))));
        for (size_t n = 1; n < m; ++n) {
            TruncSeries partial = TruncSeries(std::vector<S>(r.begin(), r.begin() + n + 1));
            TruncSeries p = partial.pow(d);
            // (r + r_n x^n)^d = r^d + d r_n x^n + higher, so solve linearly.
            r[n] = (c_[n] - p.c_[n]) * dinv;
        }
        return TruncSeries(std::move(r));
    }

    // exp of a series with zero constant term, via e' = s' e.
    TruncSeries exponential() const
    {
        if (!scalar_is_zero(c_[0]))
            throw std::domain_error("TruncSeries::exponential: nonzero constant term");
        size_t m = precision();
        std::vector<S> e(m, scalar_zero(c_[0]));
        e[0] = scalar_one(c_[0]);
        for (size_t n = 1; n < m; ++n) {
            S acc = scalar_zero(c_[0]);
            for (size_t j = 1; j <= n; ++j)
                acc += c_[j] * e[n - j] * scalar_from_rat(c_[0], Rat(static_cast<long>(j)));
            e[n] = acc * scalar_from_rat(c_[0], Rat(1, static_cast<long>(n)));
        }
        return TruncSeries(std::move(e));
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        size_t m = std::min(a.precision(), b.precision());
        for (size_t i = 0; i < m; ++i)
            if (!(a.c_[i] == b.c_[i]))
                return false;
        return true; // equality to common precision
    }

private:
    std::vector<S> c_;
};

using QSeries = TruncSeries<Rat>;

} // namespace weylkit
