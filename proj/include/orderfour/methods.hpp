#ifndef ORDERFOUR_METHODS_HPP
#define ORDERFOUR_METHODS_HPP

#include "orderfour/expr.hpp"
#include "orderfour/real.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orderfour {

// Weight function G(t) for the fourth-order family, stored as exact rational
// polynomial coefficients in t (low-to-high degree) so it is valid at any
// working precision. The built-in "chun" weight is G(t) = 9/4 - (9/4)t + t^2.
// Derivative values at t = 1 are computed exactly from the coefficients.
class WeightFn {
  public:
    static WeightFn chun();
    static WeightFn polynomial(std::vector<Rational> coeffs);
    // "chun" or "poly:c0,c1,..." (decimal or p/q coefficients)
    static WeightFn from_spec(std::string_view spec);

    Real operator()(const Real& t) const;  // Horner at t's precision

    // G(1), G'(1), G''(1), G'''(1): exact values
    const Rational& g1() const { return g1_; }
    const Rational& g1p() const { return g1p_; }
    const Rational& g1pp() const { return g1pp_; }
    const Rational& g1ppp() const { return g1ppp_; }

    bool is_chun() const { return named_chun_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    std::string spec_string() const;

  private:
    WeightFn(std::vector<Rational> coeffs, bool named_chun);

    std::vector<Rational> coeffs_;
    bool named_chun_;
    Rational g1_, g1p_, g1pp_, g1ppp_;
};

// Per-condition result of checking G(1)=1, G'(1)=-1/4, G''(1)=2. The third
// derivative only has to exist; its value is reported.
struct WeightReport {
    bool value_ok = false;
    bool slope_ok = false;
    bool curvature_ok = false;
    Rational value, slope, curvature, third;

    bool pass() const { return value_ok && slope_ok && curvature_ok; }
};

WeightReport validate_weight(const WeightFn& weight, const Real& tol);
// tol = 10^(-working_digits + 30)
WeightReport validate_weight(const WeightFn& weight);

enum class MethodId {
    Newton,
    Weerakoon,
    Homeier,
    Bisectrix,
    InverseBisectrix,
    Chun3,
    WeightedFourth,
};

// One of the seven iteration schemes. WeightedFourth carries its weight
// function and the damping constant a of the first half-step (default 2/3,
// the only value with a proven order; anything else runs as order-unknown).
class MethodKind {
  public:
    static MethodKind newton() { return MethodKind(MethodId::Newton); }
    static MethodKind weerakoon() { return MethodKind(MethodId::Weerakoon); }
    static MethodKind homeier() { return MethodKind(MethodId::Homeier); }
    static MethodKind bisectrix() { return MethodKind(MethodId::Bisectrix); }
    static MethodKind inverse_bisectrix() { return MethodKind(MethodId::InverseBisectrix); }
    static MethodKind chun3() { return MethodKind(MethodId::Chun3); }
    static MethodKind weighted4(WeightFn weight = WeightFn::chun(),
                                Rational a = Rational(2) / 3);

    static std::optional<MethodKind> from_name(std::string_view name);

    MethodId id() const { return id_; }
    // 2 for Newton, 3 for the third-order variants, 4 for WeightedFourth
    // with a = 2/3; nullopt for WeightedFourth with any other a.
    std::optional<int> theoretical_order() const;
    int evals_per_iter() const;  // 2 for Newton, 3 otherwise
    std::string name() const;    // CLI binding string

    const WeightFn& weight() const { return weight_; }
    const Rational& damping() const { return a_; }

  private:
    explicit MethodKind(MethodId id)
        : id_(id), weight_(WeightFn::chun()), a_(Rational(2) / 3) {}

    MethodId id_;
    WeightFn weight_;
    Rational a_;
};

struct IterationSettings {
    Real tol_step;
    Real tol_residual;
    int max_iter = 100;

    // tol_step = tol_residual = 10^(-(decimal_digits - 20)), max_iter = 100
    static IterationSettings defaults(int decimal_digits);
};

enum class StopReason {
    StepTolerance,
    ResidualTolerance,
    MaxIterations,
    DerivativeVanished,
    DenominatorVanished,
    DomainError,
};

std::string_view to_string(StopReason r);

struct Trace {
    std::vector<Real> iterates;    // x0, x1, ...
    std::vector<Real> residuals;   // f at each iterate
    std::vector<Real> aux_points;  // the y_n of each completed step
    StopReason stop = StopReason::MaxIterations;
    long evals_used = 0;           // (iterates - 1) * evals_per_iter
};

struct StepResult {
    Real next;  // x_{n+1}
    Real aux;   // y_n used inside the step (the Newton point itself for Newton)
};

// Single steps. All throw DerivativeVanished / DenominatorVanished when the
// respective quantity falls below 10^(-working_digits + 10) in magnitude,
// and propagate EvalDomainError from the expression.
StepResult step_newton(const Expr& f, const Real& x);
StepResult step_weerakoon(const Expr& f, const Real& x);
StepResult step_homeier(const Expr& f, const Real& x);
StepResult step_bisectrix(const Expr& f, const Real& x);
StepResult step_inverse_bisectrix(const Expr& f, const Real& x);
StepResult step_chun(const Expr& f, const Real& x);
StepResult step_weighted_fourth(const Expr& f, const Real& x, const WeightFn& weight,
                                const Rational& a);

StepResult step(const Expr& f, const MethodKind& method, const Real& x);

// Iterates until a stop condition fires. Mid-run failures (vanished
// derivative or denominator, domain error) truncate the trace with the
// corresponding StopReason instead of throwing.
Trace run(const Expr& f, const MethodKind& method, const Real& x0,
          const IterationSettings& settings);

}  // namespace orderfour

#endif
