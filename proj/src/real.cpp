#include "orderfour/real.hpp"

#include "orderfour/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace orderfour {

Precision::Precision(int digits) : decimal_digits(digits) {
    if (digits < kMinDigits)
        throw Error("precision must be at least " + std::to_string(kMinDigits) +
                    " decimal digits, got " + std::to_string(digits));
}

void Precision::activate() const {
    Real::default_precision(static_cast<unsigned>(decimal_digits));
}

ScopedPrecision::ScopedPrecision(int decimal_digits) : saved_(Real::default_precision()) {
    Precision(decimal_digits).activate();
}

ScopedPrecision::~ScopedPrecision() {
    Real::default_precision(saved_);
}

int working_digits() {
    return static_cast<int>(Real::default_precision());
}

Real make_real(std::string_view decimal) {
    try {
        return Real(std::string(decimal));
    } catch (const std::exception&) {
        throw Error("not a valid decimal number: '" + std::string(decimal) + "'");
    }
}

Real pow10(long k) {
    return pow(Real(10), k);
}

Real pi_value() {
    return boost::math::constants::pi<Real>();
}

Real e_value() {
    return exp(Real(1));
}

Real parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return make_real(text);
    const Real num = make_real(text.substr(0, slash));
    const Real den = make_real(text.substr(slash + 1));
    if (den == 0)
        throw Error("zero denominator in rational '" + std::string(text) + "'");
    return num / den;
}

namespace {

using Integer = boost::multiprecision::mpz_int;

// [-]digits[.digits][eE[+-]digits], converted without rounding
Rational rational_from_decimal(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
        negative = rest[0] == '-';
        rest.remove_prefix(1);
    }
    std::string digits;
    long frac_len = 0;
    long exponent = 0;
    std::size_t i = 0;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9')
        digits += rest[i++];
    if (digits.empty())
        throw Error("not a valid number: '" + std::string(text) + "'");
    if (i < rest.size() && rest[i] == '.') {
        ++i;
        const std::size_t frac_start = i;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9')
            digits += rest[i++];
        frac_len = static_cast<long>(i - frac_start);
        if (frac_len == 0)
            throw Error("not a valid number: '" + std::string(text) + "'");
    }
    if (i < rest.size() && (rest[i] == 'e' || rest[i] == 'E')) {
        ++i;
        const std::string exp_text(rest.substr(i));
        try {
            exponent = std::stol(exp_text);
        } catch (const std::exception&) {
            throw Error("not a valid exponent in '" + std::string(text) + "'");
        }
        i = rest.size();
    }
    if (i != rest.size())
        throw Error("not a valid number: '" + std::string(text) + "'");

    // strip leading zeros; the Integer string constructor reads 0-prefixed
    // input as octal
    const std::size_t first_nonzero = digits.find_first_not_of('0');
    digits = first_nonzero == std::string::npos ? "0" : digits.substr(first_nonzero);

    Rational value{Integer(digits)};
    const long shift = exponent - frac_len;
    const Rational scale{pow(Integer(10), static_cast<unsigned>(shift < 0 ? -shift : shift))};
    if (shift < 0)
        value /= scale;
    else
        value *= scale;
    if (negative)
        value = -value;
    return value;
}

}  // namespace

Rational parse_rational_text(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return rational_from_decimal(text);
    const Rational num = rational_from_decimal(text.substr(0, slash));
    const Rational den = rational_from_decimal(text.substr(slash + 1));
    if (den == 0)
        throw Error("zero denominator in rational '" + std::string(text) + "'");
    return num / den;
}

Real to_real(const Rational& q) {
    return Real(q);
}

Real ulp_of(const Real& x) {
    if (x == 0)
        return Real(0);
    const mpfr_exp_t e = mpfr_get_exp(x.backend().data());
    const mpfr_prec_t p = mpfr_get_prec(x.backend().data());
    return ldexp(Real(1), static_cast<long>(e - p));
}

Real ulps_between(const Real& a, const Real& b) {
    const Real ref = abs(a) >= abs(b) ? a : b;
    const Real u = ulp_of(ref);
    if (u == 0)
        return abs(a - b) == 0 ? Real(0) : Real("1e1000");
    return abs(a - b) / u;
}

std::string to_sci_string(const Real& v, int significant_digits) {
    return v.str(static_cast<std::streamsize>(significant_digits), std::ios_base::scientific);
}

}  // namespace orderfour
