#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace daegeo {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Accepts "7", "-3/4" and exact decimals such as "0.125" or "-1.5e-3".
    /// Throws ParseError on anything else, including a zero denominator.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    double to_double() const { return value_.get_d(); }

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class value_;
};

}  // namespace daegeo

template <>
struct std::hash<daegeo::Rational> {
    std::size_t operator()(const daegeo::Rational& r) const { return std::hash<std::string>{}(r.to_string()); }
};
