#pragma once

#include <optional>
#include <string>

#include "weylkit/graded.hpp"

namespace weylkit {

// Change of variables x -> u together with the function-conjugation part:
// Phi(x) = u, Phi(d) = (1/u') d + v. Here u in m with u'(0) != 0, so
// composition with u is defined on all of K[[x]].
struct VariableChange {
    TruncSeries<Rat> u;
    TruncSeries<Rat> v;

    static VariableChange identity(size_t precision);
};

D1Op<Rat> apply_change(const VariableChange& ch, const D1Op<Rat>& p);

// Reduce a D1 operator with HT(P)(0) != 0 to the normalized form
// d^p + c_{p-2} d^{p-2} + ... + c_0.
struct NormalizeResult {
    VariableChange change;
    D1Op<Rat> pnorm;
};
NormalizeResult normalize(const D1Op<Rat>& p);

bool is_normalized(const D1Op<Rat>& p);

// The closed-form order -p tail: (-(1/p) x d + sum_i e_i A_{p;i}) Int^p
// with e_0 = (p-1)/(2p), e_i = 1/(p (xi^{-i} - 1)).
Hcp qp_tail(long p);

// Solve [Y, d^p] = R for a homogeneous Y of order R.order() - p, canonical
// in the sense that the coordinates of the centralizer degrees of freedom
// vanish. Throws BracketObstruction when R is not in the image.
struct BracketObstruction : std::domain_error {
    explicit BracketObstruction(const std::string& what) : std::domain_error(what) {}
};
Hcp bracket_solve(long p, const Hcp& r);

// Schur data for a normalized operator: S P = d^p S with S_0 = 1, S_{-1} = 0,
// together with the inverse to the same depth.
struct SchurData {
    long p = 0;
    GradedOp s;
    GradedOp s_inv;

    SchurData(long p_, GradedOp s_, GradedOp si) : p(p_), s(std::move(s_)), s_inv(std::move(si)) {}
};

SchurData schur(const D1Op<Rat>& pnorm, long depth);

// Normal form of q with respect to the Schur data: S q S^{-1}.
GradedOp normal_form(const D1Op<Rat>& q, const SchurData& sd);
GradedOp normal_form(const GradedOp& q, const SchurData& sd);

// Condition A_q(k) of the graded theory; on failure `witness` names the
// violated clause and component.
struct ConditionAqReport {
    bool ok = false;
    std::string witness;
};
ConditionAqReport condition_aq(const GradedOp& p, unsigned q, long k);

enum class Regularity { Regular, Irregular, Undetermined };
Regularity is_regular(const D1Op<Rat>& p);
Regularity is_regular(const GradedOp& p);

} // namespace weylkit
