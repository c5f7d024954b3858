#ifndef ORDERFOUR_JET_HPP
#define ORDERFOUR_JET_HPP

#include "orderfour/real.hpp"

#include <array>
#include <string>

namespace orderfour {

// Degree-4 truncated Taylor series at a point: coeffs[k] = f^(k)(x)/k! for
// the represented function. Propagating a variable jet through an expression
// yields the value and the first four derivatives in one pass.
class Jet4 {
  public:
    Jet4() : c_{Real(0), Real(0), Real(0), Real(0), Real(0)} {}

    static Jet4 constant(const Real& v);
    static Jet4 variable(const Real& x);  // [x, 1, 0, 0, 0]

    const Real& operator[](std::size_t k) const { return c_[k]; }
    Real& operator[](std::size_t k) { return c_[k]; }

    const Real& value() const { return c_[0]; }
    // f^(k)(x), i.e. coeffs[k] * k!
    Real derivative(int k) const;

    Jet4 operator-() const;
    friend Jet4 operator+(const Jet4& a, const Jet4& b);
    friend Jet4 operator-(const Jet4& a, const Jet4& b);
    friend Jet4 operator*(const Jet4& a, const Jet4& b);
    friend Jet4 operator/(const Jet4& a, const Jet4& b);

    std::string str(int significant_digits = 12) const;

  private:
    std::array<Real, 5> c_;
};

// Elementary functions, composed as degree-4 truncations of the exact Taylor
// series. Domain preconditions throw DomainErrorJet.
Jet4 exp(const Jet4& u);
Jet4 log(const Jet4& u);   // natural log, requires u.value() > 0
Jet4 sin(const Jet4& u);
Jet4 cos(const Jet4& u);
Jet4 sqrt(const Jet4& u);  // requires u.value() > 0
Jet4 pow(const Jet4& base, const Jet4& exponent);

}  // namespace orderfour

#endif
