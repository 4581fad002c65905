#pragma once

#include "harpack/rational.hpp"

namespace harpack {

/// Rational bracket [lo, hi] around ln 2 with hi - lo < 1e-30.
/// Strict inequalities against ln 2 are decided against the conservative
/// endpoint: "x < ln 2" passes only when x < lo, "x > ln 2" only when x > hi.
struct Ln2Bracket {
    Rational lo;
    Rational hi;

    bool certainly_above(const Rational& x) const { return x < lo; }   // x < ln 2
    bool certainly_below(const Rational& x) const { return x > hi; }   // x > ln 2
};

/// Computed once from the series ln 2 = 2 atanh(1/3) with a geometric tail
/// bound; both endpoints are exact rationals.
const Ln2Bracket& ln2_bracket();

}  // namespace harpack
