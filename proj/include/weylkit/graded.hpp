#pragma once

#include <limits>
#include <optional>

#include "weylkit/hcp.hpp"

namespace weylkit {

// Order-graded element of the completed operator ring: a finite map
// order -> HCP component. Components at orders >= lo() are known exactly
// (absent key = known zero); anything below lo() is undetermined. Exact
// elements (finite sums known everywhere) use the sentinel lo.
class GradedOp {
public:
    static constexpr long kExactLo = std::numeric_limits<long>::min() / 4;

    explicit GradedOp(unsigned k, long lo = kExactLo);

    static GradedOp from_hcpc(const Hcpc& h, long lo = kExactLo);
    static GradedOp one(unsigned k);
    static GradedOp scalar(unsigned k, const CycElem& c);
    static GradedOp d_power(unsigned k, long p); // d^p (p >= 0) or Int^{-p}
    static GradedOp from_weyl(unsigned k, const WeylOp<Rat>& p);
    // Homogeneous decomposition of a D1 operator; lo = ord - precision + 1.
    static GradedOp from_d1(unsigned k, const D1Op<Rat>& p);

    unsigned modulus() const { return k_; }
    long lo() const { return lo_; }
    bool exact() const { return lo_ == kExactLo; }
    const std::map<long, Hcp>& components() const { return comp_; }
    const Hcp* component(long r) const;
    Hcp component_or_zero(long r) const;
    bool is_zero_to_depth() const { return comp_.empty(); }

    // Highest order carrying a nonzero component, if any is stored.
    std::optional<long> ord() const;
    Hcp sigma() const; // component at ord(); throws when zero to depth

    void add_component(const Hcp& h); // drops parts below lo

    GradedOp truncated(long new_lo) const;
    GradedOp operator-() const;
    GradedOp scale(const CycElem& c) const;
    friend GradedOp operator+(const GradedOp& a, const GradedOp& b);
    friend GradedOp operator-(const GradedOp& a, const GradedOp& b);
    friend GradedOp operator*(const GradedOp& a, const GradedOp& b);

    Hcpc to_hcpc() const; // the stored components as a finite sum

private:
    unsigned k_;
    long lo_;
    std::map<long, Hcp> comp_;
};

// Equality on the common known range.
bool equal_to_depth(const GradedOp& a, const GradedOp& b);

GradedOp graded_pow(const GradedOp& a, unsigned e);
GradedOp graded_commutator(const GradedOp& a, const GradedOp& b);

// Inverse of an order-0 operator whose order-0 component is a unit of the
// subring spanned by {A_i} and {B_j} (x-degree 0). `depth` bounds the
// computed components for exact inputs; truncated inputs default to their
// own depth.
GradedOp invert_unit(const GradedOp& s, std::optional<long> depth = std::nullopt);

GradedOp conjugate(const GradedOp& s, const GradedOp& x, const GradedOp& s_inv);

// P_alpha = sum u^i d^i / i! realizing f(x) -> f(x + u); requires u in m
// with 1 + u'(0) = xi_k^i for some i (otherwise not representable here).
GradedOp endo_operator(const TruncSeries<CycElem>& u, unsigned k, long depth);

} // namespace weylkit
