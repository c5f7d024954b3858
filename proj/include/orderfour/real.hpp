#ifndef ORDERFOUR_REAL_HPP
#define ORDERFOUR_REAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace orderfour {

// Extended-precision scalar. Precision is set per thread through
// ScopedPrecision (or Precision::activate) and newly constructed values pick
// it up; arithmetic results carry the widest precision of their operands, so
// mixing a 600-digit reference root into 300-digit error columns keeps the
// extra digits where they matter.
using Real = boost::multiprecision::mpfr_float;

// Exact rational, for configuration values (weight coefficients, the
// weighted-method damping constant) that must survive precision changes.
// Materialize with to_real() at the point of use, never earlier.
using Rational = boost::multiprecision::mpq_rational;

// Working precision of all Real arithmetic, in decimal digits.
struct Precision {
    static constexpr int kMinDigits = 50;
    static constexpr int kDefaultDigits = 300;

    int decimal_digits = kDefaultDigits;

    explicit Precision(int digits = kDefaultDigits);

    // Makes this precision the thread's default for new Real values.
    void activate() const;
};

// RAII guard: sets the thread default precision, restores the previous one.
class ScopedPrecision {
  public:
    explicit ScopedPrecision(int decimal_digits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

// Current thread default precision in decimal digits.
int working_digits();

// Decimal-literal to Real at the current working precision. The conversion is
// exact to the last bit (no intermediate double).
Real make_real(std::string_view decimal);

// 10^k at the current working precision.
Real pow10(long k);

// Constants at the current working precision.
Real pi_value();
Real e_value();

// Parses "p/q" or a plain decimal into a Real at working precision.
Real parse_rational(std::string_view text);

// Parses "p/q" or a decimal (with optional exponent) into an exact Rational:
// "2/3" -> 2/3, "2.87" -> 287/100, "1e-3" -> 1/1000.
Rational parse_rational_text(std::string_view text);

// Rational to Real at the current working precision.
Real to_real(const Rational& q);

// One unit in the last place of x at x's own precision (0 for x == 0).
Real ulp_of(const Real& x);

// |a - b| measured in ulps of the larger-magnitude operand.
Real ulps_between(const Real& a, const Real& b);

// Scientific notation with the requested significant digits, e.g.
// "4.286439331542567890e-10". Deterministic, locale-independent.
std::string to_sci_string(const Real& v, int significant_digits);

}  // namespace orderfour

#endif
