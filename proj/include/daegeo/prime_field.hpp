#pragma once

#include "daegeo/errors.hpp"
#include "daegeo/rational.hpp"

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace daegeo {

/// Residues modulo a small prime P. Used to run the field-generic algorithms
/// over finite fields, where every subspace can be enumerated.
template <std::uint32_t P>
class PrimeField {
    static_assert(P >= 2 && P < 65536, "modulus must be a small prime");

public:
    static constexpr std::uint32_t modulus = P;

    constexpr PrimeField() = default;
    constexpr PrimeField(long v)  // NOLINT(google-explicit-constructor)
        : value_(static_cast<std::uint32_t>(((v % static_cast<long>(P)) + static_cast<long>(P)) % static_cast<long>(P))) {}
    constexpr PrimeField(int v) : PrimeField(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

    constexpr std::uint32_t value() const { return value_; }
    constexpr bool is_zero() const { return value_ == 0; }

    constexpr PrimeField inverse() const {
        if (value_ == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(P) + ")");
        // Fermat: a^(P-2)
        std::uint64_t result = 1, base = value_;
        for (std::uint32_t e = P - 2; e > 0; e >>= 1) {
            if (e & 1u) result = result * base % P;
            base = base * base % P;
        }
        return from_raw(static_cast<std::uint32_t>(result));
    }

    constexpr PrimeField operator-() const { return from_raw(value_ == 0 ? 0 : P - value_); }
    constexpr PrimeField& operator+=(PrimeField o) { value_ = (value_ + o.value_) % P; return *this; }
    constexpr PrimeField& operator-=(PrimeField o) { value_ = (value_ + P - o.value_) % P; return *this; }
    constexpr PrimeField& operator*=(PrimeField o) {
        value_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(value_) * o.value_ % P);
        return *this;
    }
    constexpr PrimeField& operator/=(PrimeField o) { return *this *= o.inverse(); }

    friend constexpr PrimeField operator+(PrimeField a, PrimeField b) { return a += b; }
    friend constexpr PrimeField operator-(PrimeField a, PrimeField b) { return a -= b; }
    friend constexpr PrimeField operator*(PrimeField a, PrimeField b) { return a *= b; }
    friend constexpr PrimeField operator/(PrimeField a, PrimeField b) { return a /= b; }
    friend constexpr bool operator==(PrimeField a, PrimeField b) { return a.value_ == b.value_; }

    std::string to_string() const { return std::to_string(value_); }
    friend std::ostream& operator<<(std::ostream& os, PrimeField a) { return os << a.value_; }

    /// Reduces a rational mod P; fails when P divides the denominator.
    static PrimeField from_rational(const Rational& r) {
        const mpz_class p(static_cast<unsigned long>(P));
        mpz_class num = r.numerator() % p;
        mpz_class den = r.denominator() % p;
        if (den == 0)
            throw ParseError("denominator of " + r.to_string() + " is divisible by " + std::to_string(P));
        if (num < 0) num += p;
        return PrimeField(static_cast<long>(num.get_si())) / PrimeField(static_cast<long>(den.get_si()));
    }

private:
    static constexpr PrimeField from_raw(std::uint32_t v) {
        PrimeField f;
        f.value_ = v;
        return f;
    }

    std::uint32_t value_ = 0;
};

using GF2 = PrimeField<2>;
using GF3 = PrimeField<3>;

}  // namespace daegeo
