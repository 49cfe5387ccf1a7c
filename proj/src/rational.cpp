#include "daegeo/rational.hpp"

#include "daegeo/errors.hpp"

#include <cctype>
#include <string>

namespace daegeo {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Optional sign followed by at least one digit.
bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return all_digits(s);
}

mpz_class parse_integer(std::string_view s) {
    std::string buf(s);
    if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
    return mpz_class(buf, 10);
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view mantissa = s;
    std::string_view exponent;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        exponent = s.substr(e + 1);
        if (!is_integer_literal(exponent)) throw ParseError("malformed exponent in number '" + std::string(text) + "'");
    }
    std::string_view whole = mantissa;
    std::string_view frac;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        whole = mantissa.substr(0, dot);
        frac = mantissa.substr(dot + 1);
    }
    if (whole.empty() && frac.empty()) throw ParseError("malformed number '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
        throw ParseError("malformed number '" + std::string(text) + "'");

    std::string digits = std::string(whole) + std::string(frac);
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    long exp10 = -static_cast<long>(frac.size());
    if (!exponent.empty()) {
        const mpz_class e = parse_integer(exponent);
        if (!e.fits_slong_p() || abs(e) > 100000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
        exp10 += e.get_si();
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(num, scale) : mpq_class(num * scale, 1);
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw ParseError("zero denominator");
    value_ = mpq_class(numerator, 1) / mpq_class(denominator, 1);
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational literal");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!is_integer_literal(num) || !all_digits(den))
            throw ParseError("malformed rational '" + std::string(text) + "' (expected p/q with q > 0)");
        const mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        mpq_class q(parse_integer(num), d);
        q.canonicalize();
        return Rational(q);
    }
    if (is_integer_literal(text)) return Rational(mpq_class(parse_integer(text), 1));
    return parse_decimal(text);
}

}  // namespace daegeo
