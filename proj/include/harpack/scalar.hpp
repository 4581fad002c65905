#pragma once

#include "harpack/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace harpack {

enum class NumericMode { Float, Exact };

/// Per-scalar-type operations. The engine is templated on the scalar; the two
/// instantiations are binary64 (fast) and Rational (exact).
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr NumericMode mode = NumericMode::Float;
    static double inv(std::uint64_t i) { return 1.0 / static_cast<double>(i); }
    static double from_uint(std::uint64_t v) { return static_cast<double>(v); }
    static double to_double(double x) { return x; }

    /// 17 significant digits: exact binary64 round-trip.
    static std::string format(double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }

    static std::optional<double> parse(std::string_view s) {
        double v{};
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
        return v;
    }
};

template <>
struct ScalarOps<Rational> {
    static constexpr NumericMode mode = NumericMode::Exact;
    static Rational inv(std::uint64_t i) { return Rational::unit_fraction(i); }
    static Rational from_uint(std::uint64_t v) { return Rational::from_uint(v); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string format(const Rational& x) { return x.str(); }
    static std::optional<Rational> parse(std::string_view s) { return Rational::parse(s); }
};

/// Compensated (Neumaier) accumulator. Supports removal by adding negatives;
/// state is exposed so checkpoints can restore it bit-exactly.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            compensation += (sum - t) + v;
        else
            compensation += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + compensation; }
};

/// Mode-generic running total: exact in Rational, compensated in double.
template <class S>
struct RunningTotal {
    S total{};
    void add(const S& v) { total += v; }
    void sub(const S& v) { total -= v; }
    S value() const { return total; }
};

template <>
struct RunningTotal<double> {
    CompensatedSum acc;
    void add(double v) { acc.add(v); }
    void sub(double v) { acc.add(-v); }
    double value() const { return acc.value(); }
};

}  // namespace harpack
