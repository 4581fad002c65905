#pragma once

#include "harpack/geometry.hpp"
#include "harpack/ln2.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace harpack {

// Everything here is certified in exact arithmetic; inequalities against ln 2
// go through the rational bracket (strict and decided only against the
// conservative endpoint).

struct StripRow {
    int row = 0;           // 1-based
    Index first = 0;       // 2^(row-1) * n
    Index last = 0;        // 2^row * n - 1
    Rational width;        // 1/first
    std::optional<Rational> exact_length;  // sum_{j=first..last} 1/j, when materialized
    bool length_below_bound = false;       // exact_length < ln2 + width, certified
    bool bound_below_one = false;          // ln2 + width < 1, certified
};

struct StripLayout {
    Index n = 0;
    std::vector<StripRow> rows;
    Rational total_width;        // sum of materialized widths, = (2 - 2^(1-rows))/n
    Rational total_width_limit;  // 2/n, the telescoped value over all rows
    std::size_t rows_materialized = 0;  // rows carrying an exact length
};

inline constexpr std::uint64_t kDefaultRowTermBudget = 4'000'000;

/// Row partition of indices >= n: row i holds P_(2^(i-1)n) .. P_(2^i n - 1)
/// with width 1/(2^(i-1)n). Exact lengths are summed for rows whose term
/// count fits the budget (row i has 2^(i-1)n terms, so only the first few
/// rows are summable); ranges, widths and bound checks cover every row.
StripLayout strip_layout(Index n, int rows,
                         std::uint64_t term_budget = kDefaultRowTermBudget);

/// Area bound 1 + (2/n)(ln2 + 1/(2n)), evaluated with the upper ln 2
/// endpoint so the returned rational is itself a valid upper bound.
Rational strip_area_bound(Index n);

/// Side length 1 + 1/n of the container square.
Rational container_side(Index n);

/// The two glued strips of the enlarged square: row 1 along the top edge
/// (long sides horizontal), rows 2..rows along the right edge (rows stacked
/// in x, long sides vertical). Every emitted rectangle lies inside
/// [0, 1+1/n]^2 and outside the open unit square. Exact coordinates are the
/// certification path; the double instantiation exists because cumulative
/// harmonic offsets at n ~ 10^6 are rationals with ~10^5-digit terms.
template <class S>
std::vector<Placement<S>> glued_layout(Index n, int rows) {
    if (n < 1000) throw std::invalid_argument("strip construction requires n >= 1000");
    if (rows < 1) throw std::invalid_argument("rows must be >= 1");

    std::vector<Placement<S>> out;
    const S one = ScalarOps<S>::from_uint(1);

    // Row 1 along the top edge: strip [0, ...) x [1, 1+1/n].
    {
        S x{};
        for (Index j = n; j <= 2 * n - 1; ++j) {
            S w = ScalarOps<S>::inv(j);
            S h = ScalarOps<S>::inv(j + 1);
            out.push_back(Placement<S>{j, x, one, w, std::move(h), false});
            x += w;
        }
    }

    // Rows 2.. along the right edge: strip [1, 1+1/n] x [0, ...), rows
    // stacked in x, rectangles running upward with the long side vertical.
    S x_off = one;
    Index first = 2 * n;
    for (int i = 2; i <= rows; ++i) {
        if (first > (Index(1) << 62) / 2)
            throw std::invalid_argument("row index range overflows");
        S y{};
        for (Index j = first; j <= 2 * first - 1; ++j) {
            S w = ScalarOps<S>::inv(j + 1);
            S h = ScalarOps<S>::inv(j);
            out.push_back(Placement<S>{j, x_off, y, std::move(w), h, true});
            y += h;
        }
        x_off += ScalarOps<S>::inv(first);
        first *= 2;
    }
    return out;
}

/// Lower bound on how many consecutive rectangles of index >= n0 fit into a
/// w x h box: a square grid of k x k cells of side 1/n0 with
/// k = floor(min(w,h)*n0), each cell holding one rectangle (both its sides
/// are <= 1/n0).
mpz_class grid_lower_bound(const Rational& w, const Rational& h, Index n0);

struct EpsilonReport {
    Index packed_count = 0;  // M
    Rational delta;          // 1/(M+1)
    Rational side;           // 1 + delta
    Rational epsilon;        // 2*delta + delta^2 = side^2 - 1
};

EpsilonReport epsilon_report(Index M);

}  // namespace harpack
