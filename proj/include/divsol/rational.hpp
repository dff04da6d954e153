#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "divsol/errors.hpp"

namespace divsol {

// Exact rational with int64 numerator/denominator, always canonical
// (gcd 1, denominator > 0). Comparisons cross-multiply in 128 bits, so
// the usual interval-endpoint magnitudes never overflow.
class Rational {
public:
    Rational() : num_(0), den_(1) {}

    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0)
            throw MalformedInputError("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rational from_integer(std::int64_t v) { return Rational(v, 1); }

    // Decimal literal with optional sign and fractional part: "3", "-0.25",
    // "1.5". No exponents, no fraction syntax.
    static Rational parse(const std::string& text) {
        if (text.empty())
            throw MalformedInputError("empty number");
        std::size_t pos = 0;
        bool negative = false;
        if (text[pos] == '+' || text[pos] == '-') {
            negative = text[pos] == '-';
            ++pos;
        }
        std::int64_t num = 0;
        std::int64_t den = 1;
        bool any_digit = false;
        bool seen_dot = false;
        for (; pos < text.size(); ++pos) {
            char c = text[pos];
            if (c == '.') {
                if (seen_dot)
                    throw MalformedInputError("malformed number '" + text + "'");
                seen_dot = true;
                continue;
            }
            if (c < '0' || c > '9')
                throw MalformedInputError("malformed number '" + text + "'");
            any_digit = true;
            if (num > (INT64_MAX - 9) / 10)
                throw MalformedInputError("number out of range '" + text + "'");
            num = num * 10 + (c - '0');
            if (seen_dot) {
                if (den > INT64_MAX / 10)
                    throw MalformedInputError("number out of range '" + text + "'");
                den *= 10;
            }
        }
        if (!any_digit)
            throw MalformedInputError("malformed number '" + text + "'");
        return Rational(negative ? -num : num, den);
    }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace divsol
