#include "harpack/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace harpack {

std::string Rational::str() const {
    std::string s = q_.get_num().get_str();
    if (q_.get_den() != 1) {
        s += '/';
        s += q_.get_den().get_str();
    }
    return s;
}

namespace {

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto ns = s.substr(0, slash);
        auto ds = s.substr(slash + 1);
        if (!is_integer_token(ns) || !is_integer_token(ds)) return std::nullopt;
        mpq_class q;
        if (q.get_num().set_str(std::string(ns), 10) != 0) return std::nullopt;
        if (q.get_den().set_str(std::string(ds), 10) != 0) return std::nullopt;
        if (q.get_den() == 0) return std::nullopt;
        q.canonicalize();
        return Rational(std::move(q));
    }

    // Decimal / scientific form, converted exactly as printed.
    std::string digits;
    digits.reserve(s.size());
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i] == '-'), ++i;
    long frac_digits = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.') {
            if (seen_point) return std::nullopt;
            seen_point = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    long exp10 = 0;
    if (i < s.size()) {  // exponent part
        ++i;
        auto es = s.substr(i);
        if (!is_integer_token(es)) return std::nullopt;
        errno = 0;
        char* end = nullptr;
        std::string tmp(es);
        exp10 = std::strtol(tmp.c_str(), &end, 10);
        if (errno != 0 || *end != '\0') return std::nullopt;
    }

    mpq_class q;
    if (q.get_num().set_str(digits, 10) != 0) return std::nullopt;
    if (neg) q.get_num() = -q.get_num();
    long e = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e < 0)
        q.get_den() = pow10;
    else
        q.get_num() *= pow10;
    q.canonicalize();
    return Rational(std::move(q));
}

}  // namespace harpack
