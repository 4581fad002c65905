#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace harpack {

/// Arbitrary-precision rational. Always canonical: lowest terms, positive
/// denominator (mpq_class maintains this as long as arithmetic goes through
/// its operators, which it does here).
class Rational {
public:
    Rational() : q_(0) {}
    Rational(std::int64_t v) : q_(static_cast<long>(v)) {}
    Rational(std::int64_t num, std::int64_t den)
        : q_(static_cast<long>(num), static_cast<long>(den)) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(mpq_class&& q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rational unit_fraction(std::uint64_t i) {
        mpq_class q;
        q.get_num() = 1;
        q.get_den() = make_mpz(i);
        return Rational(already_canonical{}, std::move(q));
    }

    static Rational from_uint(std::uint64_t v) {
        mpq_class q;
        q.get_num() = make_mpz(v);
        q.get_den() = 1;
        return Rational(already_canonical{}, std::move(q));
    }

    /// Parses "p/q", an integer, or a decimal string ("1.8888838763176668e-6",
    /// converted exactly with a power-of-ten denominator).
    static std::optional<Rational> parse(std::string_view s);

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.q_ == 0) throw std::invalid_argument("Rational: divide by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(already_canonical{}, mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    double to_double() const { return q_.get_d(); }

    int sign() const { return sgn(q_); }

    /// "p/q" (or "p" when the denominator is 1). Exact round-trip with parse.
    std::string str() const;

    const mpq_class& raw() const { return q_; }
    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

private:
    struct already_canonical {};
    Rational(already_canonical, mpq_class&& q) : q_(std::move(q)) {}

    static mpz_class make_mpz(std::uint64_t v) {
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        return z;
    }

    mpq_class q_;
};

}  // namespace harpack
