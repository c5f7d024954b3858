#include "orderfour/methods.hpp"

#include "orderfour/errors.hpp"
#include "orderfour/jet.hpp"

#include <sstream>
#include <utility>

namespace orderfour {

namespace {

Real vanish_threshold() {
    return pow10(-working_digits() + 10);
}

void require_nonvanishing_derivative(const Real& d) {
    if (abs(d) < vanish_threshold())
        throw DerivativeVanished();
}

void require_nonvanishing_denominator(const Real& d) {
    if (abs(d) < vanish_threshold())
        throw DenominatorVanished();
}

// f and f' in one jet evaluation.
std::pair<Real, Real> value_and_slope(const Expr& f, const Real& x) {
    const Jet4 j = eval_jet(f, x);
    return {j[0], j[1]};
}

// sqrt((1 + dfx^2)(1 + dfy^2)); the argument is a product of factors >= 1.
Real bisectrix_radical(const Real& dfx, const Real& dfy) {
    const Real arg = (1 + dfx * dfx) * (1 + dfy * dfy);
    if (arg < 1)
        throw Error("bisectrix radical argument fell below 1; expected >= 1 by construction");
    return sqrt(arg);
}

}  // namespace

// --- WeightFn ---

WeightFn::WeightFn(std::vector<Rational> coeffs, bool named_chun)
    : coeffs_(std::move(coeffs)), named_chun_(named_chun) {
    if (coeffs_.empty())
        coeffs_.push_back(Rational(0));
    // Exact derivative values at t = 1: G^(m)(1) = sum_k c_k k!/(k-m)!.
    g1_ = g1p_ = g1pp_ = g1ppp_ = Rational(0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        const auto n = static_cast<long>(k);
        g1_ += c;
        g1p_ += c * n;
        g1pp_ += c * n * (n - 1);
        g1ppp_ += c * n * (n - 1) * (n - 2);
    }
}

WeightFn WeightFn::chun() {
    return WeightFn({Rational(9) / 4, Rational(-9) / 4, Rational(1)}, true);
}

WeightFn WeightFn::polynomial(std::vector<Rational> coeffs) {
    return WeightFn(std::move(coeffs), false);
}

WeightFn WeightFn::from_spec(std::string_view spec) {
    if (spec == "chun")
        return chun();
    constexpr std::string_view prefix = "poly:";
    if (spec.substr(0, prefix.size()) != prefix)
        throw Error("weight spec must be 'chun' or 'poly:<c0,c1,...>', got '" +
                    std::string(spec) + "'");
    std::vector<Rational> coeffs;
    std::string_view rest = spec.substr(prefix.size());
    if (rest.empty())
        throw Error("empty coefficient list in weight spec");
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view piece =
            comma == std::string_view::npos ? rest : rest.substr(0, comma);
        coeffs.push_back(parse_rational_text(piece));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return polynomial(std::move(coeffs));
}

Real WeightFn::operator()(const Real& t) const {
    Real r(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * t + to_real(*it);
    return r;
}

std::string WeightFn::spec_string() const {
    if (named_chun_)
        return "chun";
    std::ostringstream os;
    os << "poly:";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k)
            os << ",";
        os << coeffs_[k];
    }
    return os.str();
}

WeightReport validate_weight(const WeightFn& weight, const Real& tol) {
    WeightReport r;
    r.value = weight.g1();
    r.slope = weight.g1p();
    r.curvature = weight.g1pp();
    r.third = weight.g1ppp();
    r.value_ok = abs(to_real(r.value - 1)) <= tol;
    r.slope_ok = abs(to_real(r.slope + Rational(1) / 4)) <= tol;
    r.curvature_ok = abs(to_real(r.curvature - 2)) <= tol;
    return r;
}

WeightReport validate_weight(const WeightFn& weight) {
    return validate_weight(weight, pow10(-working_digits() + 30));
}

// --- MethodKind ---

MethodKind MethodKind::weighted4(WeightFn weight, Rational a) {
    MethodKind m(MethodId::WeightedFourth);
    m.weight_ = std::move(weight);
    m.a_ = std::move(a);
    return m;
}

std::optional<MethodKind> MethodKind::from_name(std::string_view name) {
    if (name == "newton") return newton();
    if (name == "weerakoon") return weerakoon();
    if (name == "homeier") return homeier();
    if (name == "bisectrix") return bisectrix();
    if (name == "inverse-bisectrix") return inverse_bisectrix();
    if (name == "chun3") return chun3();
    if (name == "weighted4") return weighted4();
    return std::nullopt;
}

std::optional<int> MethodKind::theoretical_order() const {
    switch (id_) {
        case MethodId::Newton: return 2;
        case MethodId::Weerakoon:
        case MethodId::Homeier:
        case MethodId::Bisectrix:
        case MethodId::InverseBisectrix:
        case MethodId::Chun3: return 3;
        case MethodId::WeightedFourth:
            if (a_ == Rational(2) / 3)
                return 4;
            return std::nullopt;  // order unproven away from a = 2/3
    }
    return std::nullopt;
}

int MethodKind::evals_per_iter() const {
    return id_ == MethodId::Newton ? 2 : 3;
}

std::string MethodKind::name() const {
    switch (id_) {
        case MethodId::Newton: return "newton";
        case MethodId::Weerakoon: return "weerakoon";
        case MethodId::Homeier: return "homeier";
        case MethodId::Bisectrix: return "bisectrix";
        case MethodId::InverseBisectrix: return "inverse-bisectrix";
        case MethodId::Chun3: return "chun3";
        case MethodId::WeightedFourth: return "weighted4";
    }
    return "?";
}

IterationSettings IterationSettings::defaults(int decimal_digits) {
    IterationSettings s;
    s.tol_step = pow10(-(decimal_digits - 20));
    s.tol_residual = s.tol_step;
    s.max_iter = 100;
    return s;
}

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::StepTolerance: return "step-tolerance";
        case StopReason::ResidualTolerance: return "residual-tolerance";
        case StopReason::MaxIterations: return "max-iterations";
        case StopReason::DerivativeVanished: return "derivative-vanished";
        case StopReason::DenominatorVanished: return "denominator-vanished";
        case StopReason::DomainError: return "domain-error";
    }
    return "?";
}

// --- steppers ---

StepResult step_newton(const Expr& f, const Real& x) {
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real next = x - fx / dfx;
    return {next, next};
}

StepResult step_weerakoon(const Expr& f, const Real& x) {
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real y = x - fx / dfx;
    const Real dfy = eval_jet(f, y)[1];
    const Real den = dfx + dfy;
    require_nonvanishing_denominator(den);
    return {x - 2 * fx / den, y};
}

StepResult step_homeier(const Expr& f, const Real& x) {
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real y = x - fx / dfx;
    const Real dfy = eval_jet(f, y)[1];
    require_nonvanishing_derivative(dfy);
    return {x - fx / 2 * (1 / dfx + 1 / dfy), y};
}

StepResult step_bisectrix(const Expr& f, const Real& x) {
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real y = x - fx / dfx;
    const Real dfy = eval_jet(f, y)[1];
    const Real den = dfx * dfy + bisectrix_radical(dfx, dfy) - 1;
    require_nonvanishing_denominator(den);
    return {x - (dfx + dfy) * fx / den, y};
}

StepResult step_inverse_bisectrix(const Expr& f, const Real& x) {
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real y = x - fx / dfx;
    const Real dfy = eval_jet(f, y)[1];
    const Real den = dfx + dfy;
    require_nonvanishing_denominator(den);
    return {x - fx * (1 + bisectrix_radical(dfx, dfy) - dfx * dfy) / den, y};
}

StepResult step_chun(const Expr& f, const Real& x) {
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real y = x - fx / dfx;
    const Real dfy = eval_jet(f, y)[1];
    return {x - (3 - dfy / dfx) / 2 * fx / dfx, y};
}

StepResult step_weighted_fourth(const Expr& f, const Real& x, const WeightFn& weight,
                                const Rational& a) {
    if (!validate_weight(weight).pass())
        throw InvalidWeight();
    const auto [fx, dfx] = value_and_slope(f, x);
    require_nonvanishing_derivative(dfx);
    const Real y = x - to_real(a) * fx / dfx;
    const Real t = eval_jet(f, y)[1] / dfx;
    return {x - (3 - t) / 2 * (fx / dfx) * weight(t), y};
}

StepResult step(const Expr& f, const MethodKind& method, const Real& x) {
    switch (method.id()) {
        case MethodId::Newton: return step_newton(f, x);
        case MethodId::Weerakoon: return step_weerakoon(f, x);
        case MethodId::Homeier: return step_homeier(f, x);
        case MethodId::Bisectrix: return step_bisectrix(f, x);
        case MethodId::InverseBisectrix: return step_inverse_bisectrix(f, x);
        case MethodId::Chun3: return step_chun(f, x);
        case MethodId::WeightedFourth:
            return step_weighted_fourth(f, x, method.weight(), method.damping());
    }
    throw Error("unknown method");
}

Trace run(const Expr& f, const MethodKind& method, const Real& x0,
          const IterationSettings& settings) {
    if (settings.max_iter < 1)
        throw Error("max_iter must be at least 1");
    if (!(settings.tol_step > 0) || !(settings.tol_residual > 0))
        throw Error("tolerances must be positive");
    Trace trace;
    trace.iterates.push_back(x0);
    trace.residuals.push_back(eval_real(f, x0));
    trace.stop = StopReason::MaxIterations;

    Real x = x0;
    for (int n = 0; n < settings.max_iter; ++n) {
        StepResult s;
        try {
            s = step(f, method, x);
        } catch (const DerivativeVanished&) {
            trace.stop = StopReason::DerivativeVanished;
            break;
        } catch (const DenominatorVanished&) {
            trace.stop = StopReason::DenominatorVanished;
            break;
        } catch (const EvalDomainError&) {
            trace.stop = StopReason::DomainError;
            break;
        }

        Real residual;
        try {
            residual = eval_real(f, s.next);
        } catch (const EvalDomainError&) {
            trace.stop = StopReason::DomainError;
            break;
        }

        trace.iterates.push_back(s.next);
        trace.residuals.push_back(residual);
        trace.aux_points.push_back(s.aux);

        if (abs(s.next - x) <= settings.tol_step) {
            trace.stop = StopReason::StepTolerance;
            break;
        }
        if (abs(residual) <= settings.tol_residual) {
            trace.stop = StopReason::ResidualTolerance;
            break;
        }
        x = s.next;
    }
    trace.evals_used =
        static_cast<long>(trace.iterates.size() - 1) * method.evals_per_iter();
    return trace;
}

}  // namespace orderfour
