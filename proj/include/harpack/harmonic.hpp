#pragma once

#include "harpack/scalar.hpp"

#include <cassert>
#include <cstdint>
#include <utility>

namespace harpack {

using Index = std::uint64_t;

/// Dimensions of the i-th rectangle: 1/i x 1/(i+1), width > height.
template <class S>
std::pair<S, S> rect_dims(Index i) {
    assert(i >= 1);
    return {ScalarOps<S>::inv(i), ScalarOps<S>::inv(i + 1)};
}

/// Tail area after packing the first n rectangles:
/// 1 - sum_{i=1..n} 1/(i(i+1)) = 1/(n+1).
template <class S>
S remaining_area(Index n) {
    return ScalarOps<S>::inv(n + 1);
}

namespace detail {

inline mpq_class harmonic_exact(Index a, Index b) {
    // Pairwise merging keeps operand sizes balanced; left-to-right
    // accumulation would hit quadratic GMP cost on long spans.
    if (b - a < 8) {
        mpq_class s = 0;
        for (Index j = a; j <= b; ++j) s += Rational::unit_fraction(j).raw();
        return s;
    }
    Index mid = a + (b - a) / 2;
    return harmonic_exact(a, mid) + harmonic_exact(mid + 1, b);
}

}  // namespace detail

/// sum_{j=a..b} 1/j. Exact in Rational mode, compensated in double mode.
template <class S>
S harmonic_partial(Index a, Index b);

template <>
inline double harmonic_partial<double>(Index a, Index b) {
    assert(1 <= a && a <= b);
    CompensatedSum s;
    for (Index j = a; j <= b; ++j) s.add(1.0 / static_cast<double>(j));
    return s.value();
}

template <>
inline Rational harmonic_partial<Rational>(Index a, Index b) {
    assert(1 <= a && a <= b);
    return Rational(detail::harmonic_exact(a, b));
}

}  // namespace harpack
