#pragma once

#include <map>
#include <optional>
#include <vector>

#include "weylkit/cyclotomic.hpp"
#include "weylkit/series.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

// Homogeneous canonical polynomial of order r for a fixed modulus k:
//
//   H = [ sum_{l,i} f_{l,i} x^l A_{k;i} d^l  +  sum_{j>=1} g_j B_j ] D^r
//
// over Q(xi_k). Stored sparsely with no zero coefficients; B_j D^r entries
// with r < 0 and j <= -r are the zero operator and are never stored.
class Hcp {
public:
    Hcp(unsigned k, long r);

    static Hcp xa_atom(unsigned k, long r, long l, long i, const CycElem& c);
    static Hcp b_atom(unsigned k, long r, long j, const CycElem& c);

    unsigned modulus() const { return k_; }
    long order() const { return r_; }
    const CycFieldPtr& field() const { return f_; }
    const std::map<std::pair<long, long>, CycElem>& xa() const { return xa_; }
    const std::map<long, CycElem>& b() const { return b_; }

    bool is_zero() const { return xa_.empty() && b_.empty(); }

    void add_xa(long l, long i, const CycElem& c);
    void add_b(long j, const CycElem& c);

    Hcp operator-() const;
    friend Hcp operator+(const Hcp& a, const Hcp& b);
    friend Hcp operator-(const Hcp& a, const Hcp& b);
    Hcp scale(const CycElem& c) const;
    friend bool operator==(const Hcp& a, const Hcp& b);
    friend bool operator!=(const Hcp& a, const Hcp& b) { return !(a == b); }

    // Sdeg_A / Sdeg_B; nullopt encodes minus infinity.
    std::optional<long> sdeg_a() const;
    std::optional<long> sdeg_b() const;

private:
    unsigned k_;
    long r_;
    CycFieldPtr f_;
    std::map<std::pair<long, long>, CycElem> xa_; // (l, i) -> coefficient
    std::map<long, CycElem> b_;                   // j -> coefficient
};

// Finite sum of HCPs of distinct orders (an order-graded element).
class Hcpc {
public:
    explicit Hcpc(unsigned k);

    static Hcpc from_hcp(const Hcp& h);
    static Hcpc scalar(unsigned k, const CycElem& c);
    static Hcpc one(unsigned k);

    unsigned modulus() const { return k_; }
    const std::map<long, Hcp>& components() const { return comp_; }
    bool is_zero() const { return comp_.empty(); }
    const Hcp* component(long r) const;
    // Component accessor that returns an empty HCP of the order when absent.
    Hcp component_or_zero(long r) const;

    void add(const Hcp& h);

    Hcpc operator-() const;
    friend Hcpc operator+(const Hcpc& a, const Hcpc& b);
    friend Hcpc operator-(const Hcpc& a, const Hcpc& b);
    Hcpc scale(const CycElem& c) const;
    friend bool operator==(const Hcpc& a, const Hcpc& b);
    friend bool operator!=(const Hcpc& a, const Hcpc& b) { return !(a == b); }

    std::optional<long> ord() const; // highest order with a nonzero component
    std::optional<long> sdeg_a() const;
    std::optional<long> sdeg_b() const;

private:
    unsigned k_;
    std::map<long, Hcp> comp_;
};

// Canonical product; component orders add.
Hcp hcp_mul(const Hcp& a, const Hcp& b);
Hcpc hcp_mul(const Hcpc& a, const Hcpc& b);
Hcpc hcp_pow(const Hcpc& a, unsigned e);
Hcpc hcp_commutator(const Hcpc& a, const Hcpc& b);

// Generators for building words: x, d, integration, delta, A_i, scalars.
struct GenTok {
    enum class Kind { X, D, Int, Delta, A, Scalar } kind;
    long a_index = 0;  // for Kind::A
    Rat scalar = Rat(1); // for Kind::Scalar
};

Hcpc generator(unsigned k, const GenTok& g);
Hcpc from_word(unsigned k, const std::vector<GenTok>& word);

// x^i d^j as a single canonical atom (exact; uses d*Int = 1).
Hcp embed_monomial(unsigned k, long i, long j);
Hcpc embed_weyl(unsigned k, const WeylOp<Rat>& p);
Hcpc embed_weyl(unsigned k, const WeylOp<CycElem>& p);

// Gamma_e = (x d)^e expanded in the x^l d^l basis; Gamma_e = 0 for e < 0.
Hcpc gamma_power(unsigned k, long e);

// Exact action on the monomial x^m: a polynomial in x over Q(xi_k).
std::map<long, CycElem> act_monomial(const Hcp& h, long m);
std::map<long, CycElem> act_monomial(const Hcpc& h, long m);

// Action on a truncated series. Precision drops by the largest net
// derivative power; throws when the result precision would vanish.
TruncSeries<CycElem> act_series(const Hcpc& h, const TruncSeries<CycElem>& f);

// Totally free of B_j: Sdeg_B(H D^p) = -inf for all integer p. Decided by
// the finite criterion (no B atoms, and none created for p = 1..max(1,-r)
// per component; creation is impossible for p <= 0 and the correction
// pattern is p-stable beyond -r).
bool is_totally_free_b(const Hcpc& h);
bool is_totally_free_b(const Hcp& h);

// Centralizer of d^k at a single order (m > -k), per the linear conditions
// of the classification of [d^k, -] = 0.
std::vector<Hcp> centralizer_basis(unsigned k, long order);
std::vector<Hcp> centralizer_basis(unsigned k, long order_min, long order_max);
bool is_central(const Hcpc& h, unsigned k);
bool is_central(const Hcp& h, unsigned k);

// Same operator re-expressed for a conductor multiple.
Hcp rescale(const Hcp& h, unsigned new_modulus);
Hcpc rescale(const Hcpc& h, unsigned new_modulus);

} // namespace weylkit
