#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orderfour/errors.hpp"
#include "orderfour/jet.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using namespace orderfour;
using orderfour::testing::fd_derivative;
using orderfour::testing::rel_err;

namespace {

Real random_real(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    return Real(dist(rng));
}

Jet4 random_jet(std::mt19937& rng) {
    Jet4 j;
    for (std::size_t k = 0; k < 5; ++k)
        j[k] = random_real(rng);
    return j;
}

}  // namespace

TEST_CASE("variable and constant jets") {
    ScopedPrecision scope(300);
    const Jet4 v = Jet4::variable(Real(3));
    CHECK(v[0] == 3);
    CHECK(v[1] == 1);
    CHECK(v[2] == 0);
    CHECK(v[3] == 0);
    CHECK(v[4] == 0);

    const Jet4 z = Jet4::variable(Real(0));
    CHECK(z[0] == 0);
    CHECK(z[1] == 1);

    const Jet4 n = Jet4::variable(make_real("-2.5"));
    CHECK(n[0] == make_real("-2.5"));
    CHECK(n[1] == 1);

    const Jet4 c = Jet4::constant(Real(7));
    CHECK(c[0] == 7);
    CHECK(c[1] == 0);
}

TEST_CASE("product of variable jets is the square's Taylor expansion") {
    ScopedPrecision scope(300);
    const Jet4 x = Jet4::variable(Real(3));
    const Jet4 sq = x * x;
    CHECK(sq[0] == 9);
    CHECK(sq[1] == 6);
    CHECK(sq[2] == 1);
    CHECK(sq[3] == 0);
    CHECK(sq[4] == 0);
    CHECK(sq.derivative(2) == 2);
}

TEST_CASE("addition") {
    ScopedPrecision scope(300);
    const Jet4 one = Jet4::constant(Real(1));
    Jet4 slope;
    slope[1] = Real(1);
    const Jet4 s = one + slope;
    CHECK(s[0] == 1);
    CHECK(s[1] == 1);
    CHECK(s[2] == 0);
}

TEST_CASE("division matches the analytic series of 1/x at 2") {
    ScopedPrecision scope(300);
    // coefficients of 1/x at x = 2 are (-1)^k 2^(-k-1): dyadic, so exact
    const Jet4 inv = Jet4::constant(Real(1)) / Jet4::variable(Real(2));
    CHECK(inv[0] == make_real("0.5"));
    CHECK(inv[1] == make_real("-0.25"));
    CHECK(inv[2] == make_real("0.125"));
    CHECK(inv[3] == make_real("-0.0625"));
    CHECK(inv[4] == make_real("0.03125"));
}

TEST_CASE("maclaurin series of exp, sin, cos") {
    ScopedPrecision scope(300);
    const Jet4 x0 = Jet4::variable(Real(0));

    const Jet4 e = exp(x0);
    CHECK(e[0] == 1);
    CHECK(e[1] == 1);
    CHECK(e[2] == Real(1) / 2);
    CHECK(e[3] == Real(1) / 6);
    CHECK(e[4] == Real(1) / 24);

    const Jet4 s = sin(x0);
    CHECK(s[0] == 0);
    CHECK(s[1] == 1);
    CHECK(s[2] == 0);
    CHECK(s[3] == Real(-1) / 6);
    CHECK(s[4] == 0);

    const Jet4 c = cos(x0);
    CHECK(c[0] == 1);
    CHECK(c[1] == 0);
    CHECK(c[2] == Real(-1) / 2);
    CHECK(c[3] == 0);
    CHECK(c[4] == Real(1) / 24);
}

TEST_CASE("jet coefficients match finite differences at doubled precision") {
    // grids avoid zeros of the derivatives so the 1e-20 relative comparison
    // is meaningful
    struct Case {
        const char* name;
        std::vector<std::string> grid;
        Jet4 (*jet)(const Jet4&);
        Real (*fn)(const Real&);
    };
    const std::vector<Case> cases = {
        {"exp",
         {"-2", "-1", "0", "0.5", "1.5", "3"},
         [](const Jet4& j) { return exp(j); },
         [](const Real& x) { return Real(exp(x)); }},
        {"ln",
         {"0.3", "0.8", "2", "5.5"},
         [](const Jet4& j) { return log(j); },
         [](const Real& x) { return Real(log(x)); }},
        {"sin",
         {"-1.1", "-0.4", "0.3", "0.9", "2.2"},
         [](const Jet4& j) { return sin(j); },
         [](const Real& x) { return Real(sin(x)); }},
        {"cos",
         {"-1.1", "-0.4", "0.3", "0.9", "2.2"},
         [](const Jet4& j) { return cos(j); },
         [](const Real& x) { return Real(cos(x)); }},
        {"sqrt",
         {"0.3", "0.8", "2", "5.5"},
         [](const Jet4& j) { return sqrt(j); },
         [](const Real& x) { return Real(sqrt(x)); }},
    };

    for (const Case& c : cases) {
        CAPTURE(c.name);
        for (const std::string& xs : c.grid) {
            CAPTURE(xs);
            Jet4 j;
            {
                ScopedPrecision scope(300);
                j = c.jet(Jet4::variable(make_real(xs)));
            }
            ScopedPrecision doubled(600);
            const Real x = make_real(xs);
            const Real h = make_real("1e-30");
            for (int k = 1; k <= 4; ++k) {
                CAPTURE(k);
                const Real fd = fd_derivative(c.fn, x, k, h);
                CHECK(rel_err(j.derivative(k), fd) < make_real("1e-20"));
            }
        }
    }
}

TEST_CASE("multiplication is commutative bitwise and associative to working precision") {
    ScopedPrecision scope(300);
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        const Jet4 a = random_jet(rng);
        const Jet4 b = random_jet(rng);
        const Jet4 c = random_jet(rng);

        const Jet4 ab = a * b;
        const Jet4 ba = b * a;
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(ab[k] == ba[k]);

        const Jet4 left = (a * b) * c;
        const Jet4 right = a * (b * c);
        for (std::size_t k = 0; k < 5; ++k) {
            const Real scale = std::max({Real(1), Real(abs(left[k])), Real(abs(right[k]))});
            CHECK(abs(left[k] - right[k]) / scale < make_real("1e-290"));
        }
    }
}

TEST_CASE("raising precision perturbs coefficients below 1e-290 relative") {
    const auto build = []() {
        const Jet4 x = Jet4::variable(make_real("1.7"));
        return sin(exp(x / Jet4::constant(Real(3)))) * cos(x) +
               sqrt(x + Jet4::constant(Real(2))) / log(x);
    };
    Jet4 low;
    {
        ScopedPrecision scope(300);
        low = build();
    }
    ScopedPrecision doubled(600);
    const Jet4 high = build();
    for (std::size_t k = 0; k < 5; ++k) {
        if (high[k] == 0) {
            CHECK(abs(low[k]) < make_real("1e-290"));
        } else {
            CHECK(rel_err(low[k], high[k]) < make_real("1e-290"));
        }
    }
}

TEST_CASE("pow handles integer, negative-integer and fractional exponents") {
    ScopedPrecision scope(300);

    const Jet4 cube = pow(Jet4::variable(Real(-2)), Jet4::constant(Real(3)));
    CHECK(cube[0] == -8);
    CHECK(cube.derivative(1) == 12);   // 3x^2
    CHECK(cube.derivative(2) == -12);  // 6x
    CHECK(cube.derivative(3) == 6);
    CHECK(cube.derivative(4) == 0);

    const Jet4 invsq = pow(Jet4::variable(Real(2)), Jet4::constant(Real(-2)));
    CHECK(invsq[0] == make_real("0.25"));
    CHECK(invsq.derivative(1) == make_real("-0.25"));  // -2 x^-3

    const Jet4 frac = pow(Jet4::variable(Real(4)), Jet4::constant(make_real("0.5")));
    CHECK(frac[0] == 2);
    CHECK(frac.derivative(1) == make_real("0.25"));  // 1/(2 sqrt(4))

    // x^x at x = 2: d/dx = x^x (ln x + 1)
    const Jet4 xx = pow(Jet4::variable(Real(2)), Jet4::variable(Real(2)));
    CHECK(xx[0] == 4);
    CHECK(rel_err(xx.derivative(1), 4 * (log(Real(2)) + 1)) < make_real("1e-295"));

    const Jet4 zero_sq = pow(Jet4::variable(Real(0)), Jet4::constant(Real(2)));
    CHECK(zero_sq[0] == 0);
    CHECK(zero_sq.derivative(1) == 0);
    CHECK(zero_sq.derivative(2) == 2);
}

TEST_CASE("domain errors") {
    ScopedPrecision scope(300);
    CHECK_THROWS_AS(Jet4::constant(Real(1)) / Jet4::constant(Real(0)), DivisionByZeroJet);
    CHECK_THROWS_AS(log(Jet4::variable(Real(0))), DomainErrorJet);
    CHECK_THROWS_AS(log(Jet4::variable(Real(-1))), DomainErrorJet);
    CHECK_THROWS_AS(sqrt(Jet4::variable(Real(-4))), DomainErrorJet);
    CHECK_THROWS_AS(sqrt(Jet4::variable(Real(0))), DomainErrorJet);
    CHECK_THROWS_AS(pow(Jet4::variable(Real(-2)), Jet4::constant(make_real("0.5"))),
                    DomainErrorJet);
    CHECK_THROWS_AS(pow(Jet4::variable(Real(0)), Jet4::constant(Real(-1))), DomainErrorJet);
    CHECK_THROWS_AS(pow(Jet4::variable(Real(-1)), Jet4::variable(Real(-1))), DomainErrorJet);
}
