#include "harpack/ln2.hpp"

namespace harpack {

namespace {

Ln2Bracket compute() {
    // ln 2 = 2 atanh(1/3) = 2 * sum_{k>=0} (1/3)^(2k+1) / (2k+1).
    // Partial sum through k = m is a strict lower bound. The tail is bounded
    // by the next term times the geometric factor 1/(1 - 1/9) = 9/8.
    const int m = 40;  // next term ~ 3^-83 / 83, far below 1e-30
    mpq_class lo = 0;
    mpz_class pow3 = 3;  // 3^(2k+1)
    for (int k = 0; k <= m; ++k) {
        mpq_class term(2, 1);
        term /= mpq_class(pow3 * (2 * k + 1));
        lo += term;
        pow3 *= 9;
    }
    mpq_class tail(2, 1);
    tail /= mpq_class(pow3 * (2 * m + 3));
    tail *= mpq_class(9, 8);
    mpq_class hi = lo + tail;
    return Ln2Bracket{Rational(std::move(lo)), Rational(std::move(hi))};
}

}  // namespace

const Ln2Bracket& ln2_bracket() {
    static const Ln2Bracket bracket = compute();
    return bracket;
}

}  // namespace harpack
