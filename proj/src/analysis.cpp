#include "harpack/analysis.hpp"

#include "harpack/harmonic.hpp"

#include <stdexcept>

namespace harpack {

namespace {

void require_strip_hypothesis(Index n) {
    if (n < 1000)
        throw std::invalid_argument("strip construction requires n >= 1000");
}

}  // namespace

StripLayout strip_layout(Index n, int rows, std::uint64_t term_budget) {
    require_strip_hypothesis(n);
    if (rows < 1) throw std::invalid_argument("rows must be >= 1");

    const auto& ln2 = ln2_bracket();
    const Rational one = Rational::from_uint(1);

    StripLayout out;
    out.n = n;
    out.total_width_limit = Rational(2) / Rational::from_uint(n);

    Index first = n;
    for (int i = 1; i <= rows; ++i) {
        if (first > (Index(1) << 62) / 2)
            throw std::invalid_argument("row index range overflows");
        StripRow row;
        row.row = i;
        row.first = first;
        row.last = 2 * first - 1;
        row.width = Rational::unit_fraction(first);
        row.bound_below_one = ln2.hi + row.width < one;
        if (first <= term_budget) {  // row term count == first
            row.exact_length = harmonic_partial<Rational>(row.first, row.last);
            row.length_below_bound = *row.exact_length < ln2.lo + row.width;
            ++out.rows_materialized;
        }
        out.total_width += row.width;
        out.rows.push_back(std::move(row));
        first *= 2;
    }
    return out;
}

Rational strip_area_bound(Index n) {
    require_strip_hypothesis(n);
    const Rational two_over_n = Rational(2) / Rational::from_uint(n);
    const Rational half_over_n = Rational(1) / (Rational(2) * Rational::from_uint(n));
    return Rational(1) + two_over_n * (ln2_bracket().hi + half_over_n);
}

Rational container_side(Index n) {
    require_strip_hypothesis(n);
    return Rational(1) + Rational::unit_fraction(n);
}

mpz_class grid_lower_bound(const Rational& w, const Rational& h, Index n0) {
    if (w.sign() <= 0 || h.sign() <= 0)
        throw std::invalid_argument("box sides must be positive");
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    const Rational n0r = Rational::from_uint(n0);
    auto cells = [&](const Rational& side) {
        mpq_class scaled = (side * n0r).raw();
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), scaled.get_num().get_mpz_t(),
                   scaled.get_den().get_mpz_t());
        return f;
    };
    // Square grid on the shorter side: k x k cells of side 1/n0, each holding
    // one rectangle of index >= n0. This is the reference arithmetic (188888^2
    // for the recorded final box); the k x m product form would be slightly
    // larger but is not what the continuation argument states.
    const mpz_class k = cells(w < h ? w : h);
    return k * k;
}

EpsilonReport epsilon_report(Index M) {
    if (M < 1000) throw std::invalid_argument("epsilon_report requires M >= 1000");
    EpsilonReport rep;
    rep.packed_count = M;
    rep.delta = Rational::unit_fraction(M + 1);
    rep.side = Rational(1) + rep.delta;
    rep.epsilon = Rational(2) * rep.delta + rep.delta * rep.delta;
    return rep;
}

}  // namespace harpack
