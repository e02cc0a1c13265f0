#pragma once

#include <memory>
#include <vector>

#include "weylkit/rat.hpp"

namespace weylkit {

// The k-th cyclotomic field Q(xi_k), represented as Q[z]/(Phi_k(z)).
// Instances are immutable and cached per conductor; get() is thread-safe.
class CycField {
public:
    static std::shared_ptr<const CycField> get(unsigned k);

    unsigned conductor() const { return k_; }
    unsigned degree() const { return static_cast<unsigned>(phi_.size() - 1); }
    // Monic reduction polynomial Phi_k, coefficients c0..cd (cd = 1).
    const std::vector<Rat>& modulus() const { return phi_; }

private:
    explicit CycField(unsigned k);
    unsigned k_;
    std::vector<Rat> phi_;
};

using CycFieldPtr = std::shared_ptr<const CycField>;

// Element of Q(xi_k) as the canonical residue mod Phi_k: a coefficient
// vector of length deg(Phi_k).
class CycElem {
public:
    CycElem() = default; // invalid placeholder, no field attached
    CycElem(CycFieldPtr f, std::vector<Rat> coeffs);

    static CycElem from_rat(const CycFieldPtr& f, const Rat& r);
    static CycElem zero(const CycFieldPtr& f);
    static CycElem one(const CycFieldPtr& f);
    // xi_k^i, i taken mod k (negative allowed).
    static CycElem root_power(const CycFieldPtr& f, long i);

    const CycFieldPtr& field() const { return f_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    // The rational value when is_rational(); throws otherwise.
    Rat rational_value() const;

    CycElem operator-() const;
    CycElem& operator+=(const CycElem& o);
    CycElem& operator-=(const CycElem& o);
    CycElem& operator*=(const CycElem& o);
    CycElem& operator*=(const Rat& r);
    CycElem inverse() const;

    friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
    friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
    friend CycElem operator*(CycElem a, const CycElem& b) { return a *= b; }
    friend CycElem operator*(CycElem a, const Rat& r) { return a *= r; }
    friend CycElem operator*(const Rat& r, CycElem a) { return a *= r; }
    friend CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inverse(); }
    friend bool operator==(const CycElem& a, const CycElem& b);
    friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

    // Re-express in Q(xi_b) for a conductor multiple b (xi_a = xi_b^{b/a}).
    CycElem widen(const CycFieldPtr& bigger) const;

private:
    void check_same_field(const CycElem& o) const;
    CycFieldPtr f_;
    std::vector<Rat> c_;
};

} // namespace weylkit
