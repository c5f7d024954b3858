#include "orderfour/jet.hpp"

#include "orderfour/errors.hpp"

#include <sstream>

namespace orderfour {

namespace {

// g holds the Taylor coefficients g^(k)(u0)/k! of an outer function at the
// inner value u0. Returns the degree-4 truncation of g(u) via Horner in
// v = u - u0 (v has zero constant term, so the truncation is exact).
Jet4 compose(const Jet4& u, const std::array<Real, 5>& g) {
    Jet4 v = u;
    v[0] = Real(0);
    Jet4 r = Jet4::constant(g[4]);
    for (int k = 3; k >= 0; --k) {
        r = r * v;
        r[0] = g[static_cast<std::size_t>(k)];  // r was v-multiple: coeff 0 is 0
    }
    return r;
}

bool is_integer(const Real& w) {
    return floor(w) == w;
}

}  // namespace

Jet4 Jet4::constant(const Real& v) {
    Jet4 j;
    j.c_[0] = v;
    return j;
}

Jet4 Jet4::variable(const Real& x) {
    Jet4 j;
    j.c_[0] = x;
    j.c_[1] = Real(1);
    return j;
}

Real Jet4::derivative(int k) const {
    static const long factorial[5] = {1, 1, 2, 6, 24};
    return c_[static_cast<std::size_t>(k)] * factorial[k];
}

Jet4 Jet4::operator-() const {
    Jet4 r;
    for (std::size_t k = 0; k < 5; ++k)
        r.c_[k] = -c_[k];
    return r;
}

Jet4 operator+(const Jet4& a, const Jet4& b) {
    Jet4 r;
    for (std::size_t k = 0; k < 5; ++k)
        r.c_[k] = a.c_[k] + b.c_[k];
    return r;
}

Jet4 operator-(const Jet4& a, const Jet4& b) {
    Jet4 r;
    for (std::size_t k = 0; k < 5; ++k)
        r.c_[k] = a.c_[k] - b.c_[k];
    return r;
}

Jet4 operator*(const Jet4& a, const Jet4& b) {
    // Cauchy convolution truncated at degree 4. Terms are paired
    // symmetrically (a_i b_{k-i} + a_{k-i} b_i) so the result is bitwise
    // commutative.
    Jet4 r;
    for (std::size_t k = 0; k < 5; ++k) {
        Real s(0);
        for (std::size_t i = 0; 2 * i < k; ++i)
            s += a.c_[i] * b.c_[k - i] + a.c_[k - i] * b.c_[i];
        if (k % 2 == 0)
            s += a.c_[k / 2] * b.c_[k / 2];
        r.c_[k] = s;
    }
    return r;
}

Jet4 operator/(const Jet4& a, const Jet4& b) {
    if (b.value() == 0)
        throw DivisionByZeroJet();
    // Series division: q_k = (a_k - sum_{j=1..k} b_j q_{k-j}) / b_0.
    Jet4 q;
    for (std::size_t k = 0; k < 5; ++k) {
        Real s = a.c_[k];
        for (std::size_t j = 1; j <= k; ++j)
            s -= b.c_[j] * q.c_[k - j];
        q.c_[k] = s / b.c_[0];
    }
    return q;
}

Jet4 exp(const Jet4& u) {
    const Real e0 = exp(u.value());
    return compose(u, {e0, e0, e0 / 2, e0 / 6, e0 / 24});
}

Jet4 log(const Jet4& u) {
    if (u.value() <= 0)
        throw DomainErrorJet("log of a non-positive jet value");
    const Real& x = u.value();
    const Real inv = Real(1) / x;
    const Real inv2 = inv * inv;
    return compose(u, {log(x), inv, -inv2 / 2, inv2 * inv / 3, -inv2 * inv2 / 4});
}

Jet4 sin(const Jet4& u) {
    const Real s = sin(u.value());
    const Real c = cos(u.value());
    return compose(u, {s, c, -s / 2, -c / 6, s / 24});
}

Jet4 cos(const Jet4& u) {
    const Real s = sin(u.value());
    const Real c = cos(u.value());
    return compose(u, {c, -s, -c / 2, s / 6, c / 24});
}

Jet4 sqrt(const Jet4& u) {
    if (u.value() <= 0)
        throw DomainErrorJet("sqrt of a non-positive jet value");
    const Real& x = u.value();
    const Real r = sqrt(x);
    const Real inv = Real(1) / x;
    // binomial(1/2, k) * x^(1/2 - k)
    return compose(u, {r, r * inv / 2, -r * inv * inv / 8, r * inv * inv * inv / 16,
                       -r * inv * inv * inv * inv * 5 / 128});
}

Jet4 pow(const Jet4& base, const Jet4& exponent) {
    const bool exponent_constant =
        exponent[1] == 0 && exponent[2] == 0 && exponent[3] == 0 && exponent[4] == 0;
    if (!exponent_constant) {
        if (base.value() <= 0)
            throw DomainErrorJet("pow with varying exponent requires a positive base");
        return exp(exponent * log(base));
    }

    const Real& w = exponent.value();
    const Real& x = base.value();
    if (!is_integer(w)) {
        if (x <= 0)
            throw DomainErrorJet("pow with non-integer exponent requires a positive base");
    } else if (w < 0 && x == 0) {
        throw DomainErrorJet("pow of zero base with negative exponent");
    }

    // Generalized binomial: g_k = C(w, k) * x^(w-k). For integer w the
    // binomials past degree w are exact zeros, so x = 0 and x < 0 work out.
    std::array<Real, 5> g;
    Real binom(1);
    for (int k = 0; k <= 4; ++k) {
        if (k > 0)
            binom = binom * (w - (k - 1)) / k;
        if (binom == 0) {
            g[static_cast<std::size_t>(k)] = Real(0);
        } else {
            g[static_cast<std::size_t>(k)] = binom * pow(x, w - k);
        }
    }
    return compose(base, g);
}

std::string Jet4::str(int significant_digits) const {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < 5; ++k) {
        if (k)
            os << ", ";
        os << c_[k].str(significant_digits);
    }
    os << "]";
    return os.str();
}

}  // namespace orderfour
