#include "orderfour/analysis.hpp"

#include "orderfour/errors.hpp"
#include "orderfour/jet.hpp"

#include <cstddef>

namespace orderfour {

namespace {

// Longest prefix of |x_k - alpha| strictly above the usability floor; below
// it the errors are rounding noise, not convergence data.
std::vector<Real> usable_errors(const Trace& trace, const Real& alpha) {
    const int digits = static_cast<int>(trace.iterates.front().precision());
    const Real floor_value = pow10(-digits + 30);
    std::vector<Real> errors;
    for (const Real& x : trace.iterates) {
        const Real e = abs(x - alpha);
        if (e <= floor_value)
            break;
        errors.push_back(e);
    }
    return errors;
}

std::vector<Real> coc_from_errors(const std::vector<Real>& errors) {
    std::vector<Real> seq;
    for (std::size_t i = 0; i + 2 < errors.size(); ++i)
        seq.push_back(log(errors[i + 2] / errors[i + 1]) / log(errors[i + 1] / errors[i]));
    return seq;
}

}  // namespace

RootReference reference_root(const Expr& f, const Real& lo, const Real& hi) {
    const int base_digits = working_digits();
    ScopedPrecision doubled(2 * base_digits);

    Real a = lo, b = hi;
    Real fa = eval_real(f, a);
    Real fb = eval_real(f, b);
    if (fa == 0)
        b = a;
    else if (fb == 0)
        a = b;
    else if ((fa < 0) == (fb < 0))
        throw NoSignChange();

    const Real half_width = make_real("1e-10");
    while (b - a > half_width) {
        const Real mid = (a + b) / 2;
        const Real fm = eval_real(f, mid);
        if (fm == 0) {
            a = mid;
            b = mid;
            break;
        }
        if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }

    const Real residual_target = pow10(-2 * base_digits + 20);
    Real x = (a + b) / 2;
    Real fx = eval_real(f, x);
    int iterations = 0;
    while (abs(fx) > residual_target) {
        if (++iterations > 200)
            throw NonConvergence("Newton refinement of the reference root stalled");
        Real dfx;
        try {
            dfx = eval_jet(f, x)[1];
        } catch (const EvalDomainError&) {
            throw NonConvergence("reference root refinement left the function domain");
        }
        if (dfx == 0)
            throw NonConvergence("derivative vanished while refining the reference root");
        x = x - fx / dfx;
        fx = eval_real(f, x);
    }

    RootReference ref;
    ref.alpha = x;
    ref.residual = abs(fx);
    ref.bracket = {lo, hi};
    return ref;
}

std::vector<Real> coc_estimate(const Trace& trace, const Real& alpha) {
    if (trace.iterates.empty())
        throw InsufficientIterates();
    const std::vector<Real> errors = usable_errors(trace, alpha);
    if (errors.size() < 3)
        throw InsufficientIterates();
    return coc_from_errors(errors);
}

Real efficiency_index(const Real& order, int evals) {
    if (!(order > 1))
        throw Error("efficiency index requires an order greater than 1");
    if (evals < 1)
        throw Error("efficiency index requires a positive evaluation count");
    return pow(order, Real(1) / evals);
}

TaylorCoeffs taylor_coeffs(const Expr& f, const Real& alpha) {
    const Jet4 jet = eval_jet(f, alpha);
    const Real& d1 = jet[1];
    if (abs(d1) < pow10(-working_digits() + 10))
        throw DerivativeVanished();
    return {d1, jet[2] / d1, jet[3] / d1, jet[4] / d1};
}

Real predicted_constant_third_inverse_bisectrix(const TaylorCoeffs& tc) {
    return tc.c2 * tc.c2 / (1 + tc.fprime_alpha * tc.fprime_alpha) + tc.c3 / 2;
}

Real predicted_constant_fourth(const TaylorCoeffs& tc, const Real& g3) {
    return -tc.c2 * tc.c3 + tc.c4 / 9 + (309 + 32 * g3) / 81 * tc.c2 * tc.c2 * tc.c2;
}

namespace {

struct Attempt {
    Trace trace;
    Real alpha;
    std::vector<Real> errors;
    std::vector<Real> coc;
    int digits;
};

Attempt attempt_analysis(const Expr& f, const MethodKind& method, const std::string& x0,
                         const std::string& bracket_lo, const std::string& bracket_hi,
                         int digits) {
    ScopedPrecision scope(digits);
    Attempt at;
    at.digits = digits;
    at.trace = run(f, method, make_real(x0), IterationSettings::defaults(digits));
    const RootReference ref = reference_root(f, make_real(bracket_lo), make_real(bracket_hi));
    at.alpha = ref.alpha;
    at.errors = usable_errors(at.trace, at.alpha);
    at.coc = coc_from_errors(at.errors);
    return at;
}

bool needs_escalation(const std::vector<Real>& coc) {
    if (coc.size() < 3)
        return true;
    return abs(coc.back() - coc[coc.size() - 2]) > make_real("0.05");
}

ConvergenceReport build_report(const Expr& f, const MethodKind& method, const Attempt& at,
                               bool escalated) {
    if (at.coc.empty())
        throw InsufficientIterates();

    ConvergenceReport report;
    report.coc_sequence = at.coc;
    report.final_coc = at.coc.back();
    report.alpha = at.alpha;
    report.precision_used = at.digits;
    report.escalated = escalated;
    report.order = method.theoretical_order();

    if (report.order) {
        const int p = *report.order;
        for (std::size_t i = 0; i + 1 < at.errors.size(); ++i)
            report.constant_ratios.push_back(at.errors[i + 1] / pow(at.errors[i], p));
        if (!report.constant_ratios.empty())
            report.empirical_constant = report.constant_ratios.back();
        report.efficiency = efficiency_index(Real(p), method.evals_per_iter());
    } else {
        report.efficiency = Real(0);
    }

    {
        // Taylor coefficients at the doubled precision backing alpha, so the
        // predicted constants carry full accuracy.
        ScopedPrecision doubled(2 * at.digits);
        switch (method.id()) {
            case MethodId::Newton:
                report.predicted_constant = taylor_coeffs(f, at.alpha).c2;
                break;
            case MethodId::InverseBisectrix:
                report.predicted_constant =
                    predicted_constant_third_inverse_bisectrix(taylor_coeffs(f, at.alpha));
                break;
            case MethodId::WeightedFourth:
                if (report.order)
                    report.predicted_constant = predicted_constant_fourth(
                        taylor_coeffs(f, at.alpha), to_real(method.weight().g1ppp()));
                break;
            default:
                break;
        }
    }
    return report;
}

// Predicted and empirical constants should agree; a disagreement beyond 10%
// is re-checked at doubled precision before it stands as a finding.
bool constants_disagree(const ConvergenceReport& r) {
    if (!r.predicted_constant || !r.empirical_constant)
        return false;
    const Real pred = abs(*r.predicted_constant);
    const Real emp = abs(*r.empirical_constant);
    if (pred == 0)
        return emp > make_real("0.10");
    return abs(emp - pred) / pred > make_real("0.10");
}

}  // namespace

ConvergenceReport analyze(const Expr& f, const MethodKind& method, const std::string& x0,
                          const std::string& bracket_lo, const std::string& bracket_hi,
                          int decimal_digits) {
    Attempt at = attempt_analysis(f, method, x0, bracket_lo, bracket_hi, decimal_digits);
    if (!needs_escalation(at.coc)) {
        ConvergenceReport report = build_report(f, method, at, false);
        if (!constants_disagree(report))
            return report;
    }
    at = attempt_analysis(f, method, x0, bracket_lo, bracket_hi, 2 * decimal_digits);
    return build_report(f, method, at, true);
}

}  // namespace orderfour
