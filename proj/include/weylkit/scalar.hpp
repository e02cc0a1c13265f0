#pragma once

#include "weylkit/cyclotomic.hpp"
#include "weylkit/rat.hpp"

namespace weylkit {

// Uniform access to field scalars for templated containers. The sample
// argument supplies the field context (needed for CycElem, ignored for Rat).

inline Rat scalar_zero(const Rat&) { return Rat(0); }
inline Rat scalar_one(const Rat&) { return Rat(1); }
inline bool scalar_is_zero(const Rat& r) { return r.is_zero(); }
inline Rat scalar_from_rat(const Rat&, const Rat& v) { return v; }
inline Rat scalar_inverse(const Rat& r)
{
    if (r.is_zero())
        throw std::domain_error("scalar_inverse: zero");
    return Rat(1) / r;
}

inline CycElem scalar_zero(const CycElem& s) { return CycElem::zero(s.field()); }
inline CycElem scalar_one(const CycElem& s) { return CycElem::one(s.field()); }
inline bool scalar_is_zero(const CycElem& s) { return s.is_zero(); }
inline CycElem scalar_from_rat(const CycElem& s, const Rat& v)
{
    return CycElem::from_rat(s.field(), v);
}
inline CycElem scalar_inverse(const CycElem& s) { return s.inverse(); }

} // namespace weylkit
