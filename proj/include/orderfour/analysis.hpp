#ifndef ORDERFOUR_ANALYSIS_HPP
#define ORDERFOUR_ANALYSIS_HPP

#include "orderfour/expr.hpp"
#include "orderfour/methods.hpp"
#include "orderfour/real.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace orderfour {

// Ground-truth root at twice the working precision, so error columns are not
// measured against a value computed the same way they are.
struct RootReference {
    Real alpha;
    Real residual;                  // |f(alpha)| at the doubled precision
    std::pair<Real, Real> bracket;
};

// Bisection to half-width 1e-10, then Newton at doubled precision until
// |f(alpha)| <= 10^(-2*digits + 20). Throws NoSignChange / NonConvergence.
RootReference reference_root(const Expr& f, const Real& lo, const Real& hi);

// rho_n = ln|e_{n+1}/e_n| / ln|e_n/e_{n-1}| over consecutive triples of
// usable errors e_k = x_k - alpha (usable: above 10^(-digits + 30), digits
// taken from the trace's precision). Throws InsufficientIterates when fewer
// than three errors are usable.
std::vector<Real> coc_estimate(const Trace& trace, const Real& alpha);

// order^(1/evals); requires order > 1.
Real efficiency_index(const Real& order, int evals);

struct TaylorCoeffs {
    Real fprime_alpha;  // f'(alpha)
    Real c2, c3, c4;    // f^(h)(alpha) / (h! f'(alpha))
};

TaylorCoeffs taylor_coeffs(const Expr& f, const Real& alpha);

// Coefficient of e_n^3 for the inverse-bisectrix iteration:
// c2^2/(1 + f'(alpha)^2) + c3/2.
Real predicted_constant_third_inverse_bisectrix(const TaylorCoeffs& tc);

// Coefficient of e_n^4 for the weighted fourth-order family with
// G'''(1) = g3: -c2*c3 + c4/9 + (309 + 32*g3)/81 * c2^3.
Real predicted_constant_fourth(const TaylorCoeffs& tc, const Real& g3);

struct ConvergenceReport {
    std::vector<Real> coc_sequence;
    Real final_coc;
    // |e_{n+1}| / |e_n|^p for each usable consecutive pair (p = theoretical
    // order); empirical_constant is the last entry.
    std::vector<Real> constant_ratios;
    std::optional<Real> empirical_constant;
    std::optional<Real> predicted_constant;  // Newton, inverse-bisectrix, weighted4
    std::optional<int> order;
    Real efficiency;     // order^(1/evals) when the order is known, else 0
    Real alpha;
    int precision_used;  // decimal digits of the trace backing the report
    bool escalated;      // true when the run was redone at doubled precision
};

// Runs the method on f from x0 at decimal_digits, estimates the order and
// constants against a reference root from the bracket. Escalates once to
// doubled precision when the COC sequence is short (< 3 entries) or its last
// two entries disagree by more than 0.05.
ConvergenceReport analyze(const Expr& f, const MethodKind& method, const std::string& x0,
                          const std::string& bracket_lo, const std::string& bracket_hi,
                          int decimal_digits);

}  // namespace orderfour

#endif
