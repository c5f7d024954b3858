#include "orderfour/analysis.hpp"
#include "orderfour/bench.hpp"
#include "orderfour/errors.hpp"
#include "orderfour/expr.hpp"
#include "orderfour/methods.hpp"
#include "orderfour/problems.hpp"
#include "orderfour/real.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace orderfour;

int default_precision_from_env() {
    if (const char* env = std::getenv("ORDERFOUR_PRECISION")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw Error(std::string("ORDERFOUR_PRECISION is not an integer: '") + env + "'");
        }
    }
    return Precision::kDefaultDigits;
}

struct GlobalOptions {
    int precision = Precision::kDefaultDigits;
    std::string format = "md";
    std::string tol;       // empty: per-precision default
    int max_iter = 100;
};

IterationSettings make_settings(const GlobalOptions& g) {
    IterationSettings s = IterationSettings::defaults(g.precision);
    if (!g.tol.empty()) {
        s.tol_step = make_real(g.tol);
        s.tol_residual = s.tol_step;
    }
    s.max_iter = g.max_iter;
    return s;
}

MethodKind make_method(const std::string& name, const std::string& weight_spec,
                       const std::string& a_spec) {
    const auto base = MethodKind::from_name(name);
    if (!base)
        throw Error("unknown method '" + name +
                    "'; valid: newton, weerakoon, homeier, bisectrix, inverse-bisectrix, "
                    "chun3, weighted4");
    if (base->id() != MethodId::WeightedFourth) {
        if (weight_spec != "chun" || a_spec != "2/3")
            throw Error("--weight/--a only apply to method weighted4");
        return *base;
    }
    const WeightFn weight = WeightFn::from_spec(weight_spec);
    if (!validate_weight(weight).pass())
        throw Error("weight '" + weight_spec +
                    "' fails the fourth-order conditions; see the validate-weight command");
    return MethodKind::weighted4(weight, parse_rational_text(a_spec));
}

int exit_code_for(StopReason stop) {
    switch (stop) {
        case StopReason::StepTolerance:
        case StopReason::ResidualTolerance:
            return 0;
        case StopReason::MaxIterations:
            return 2;
        default:
            return 3;
    }
}

int cmd_solve(const GlobalOptions& g, const std::string& expr_text, const std::string& x0,
              const std::string& method_name, const std::string& weight_spec,
              const std::string& a_spec) {
    ScopedPrecision scope(g.precision);
    const ExprPtr f = parse(expr_text);
    const MethodKind method = make_method(method_name, weight_spec, a_spec);
    const Trace trace = run(*f, method, make_real(x0), make_settings(g));
    if (g.format == "csv") {
        std::cout << render_trace_csv("adhoc", method.name(), trace, std::nullopt);
    } else {
        std::cout << "method: " << method.name() << "   f(x) = " << format(*f)
                  << "   precision: " << g.precision << " digits\n\n"
                  << render_trace_md(trace);
    }
    return exit_code_for(trace.stop);
}

int cmd_bench(const GlobalOptions& g, const std::string& table_choice) {
    int total_mismatched = 0;
    std::string out = g.format == "csv" ? kCsvHeader : "";
    for (int id = 1; id <= 3; ++id) {
        if (table_choice != "all" && table_choice != std::to_string(id))
            continue;
        const BenchTable table = run_table(id, g.precision);
        total_mismatched += table.mismatched;
        out += g.format == "csv" ? render_table_csv_rows(table)
                                 : render_table_md(table) + "\n";
    }
    std::cout << out;
    return total_mismatched == 0 ? 0 : 2;
}

int cmd_analyze(const GlobalOptions& g, const std::string& problem_id,
                const std::string& expr_text, const std::string& bracket,
                const std::string& x0_flag, const std::string& method_name,
                const std::string& weight_spec, const std::string& a_spec) {
    ScopedPrecision scope(g.precision);
    std::string expr_source, x0, lo, hi;
    std::string label;
    if (!problem_id.empty()) {
        const Problem* p = find_problem(problem_id);
        if (!p)
            throw Error("unknown problem '" + problem_id + "'; valid: f1, f2, f3");
        expr_source = p->expr_text;
        x0 = x0_flag.empty() ? p->x0 : x0_flag;
        lo = p->bracket_lo;
        hi = p->bracket_hi;
        label = p->id;
    } else {
        if (expr_text.empty() || bracket.empty() || x0_flag.empty())
            throw Error("analyze needs --problem, or all of --expr, --bracket and --x0");
        const auto comma = bracket.find(',');
        if (comma == std::string::npos)
            throw Error("--bracket must be LO,HI");
        expr_source = expr_text;
        x0 = x0_flag;
        lo = bracket.substr(0, comma);
        hi = bracket.substr(comma + 1);
        label = "adhoc";
    }
    const ExprPtr f = parse(expr_source);
    const MethodKind method = make_method(method_name, weight_spec, a_spec);
    try {
        const ConvergenceReport report = analyze(*f, method, x0, lo, hi, g.precision);
        std::cout << "problem: " << label << "   method: " << method.name() << "\n"
                  << render_report_md(report);
    } catch (const InsufficientIterates& e) {
        std::cerr << "analyze failed: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_validate_weight(const GlobalOptions& g, const std::string& weight_spec) {
    ScopedPrecision scope(g.precision);
    const WeightFn weight = WeightFn::from_spec(weight_spec);
    const WeightReport report = validate_weight(weight);
    const auto line = [](const char* name, const Rational& got, const char* want, bool ok) {
        std::cout << name << " = " << got << "   [required " << want << "]  "
                  << (ok ? "pass" : "FAIL") << "\n";
    };
    line("G(1)  ", report.value, "1", report.value_ok);
    line("G'(1) ", report.slope, "-1/4", report.slope_ok);
    line("G''(1)", report.curvature, "2", report.curvature_ok);
    std::cout << "G'''(1) = " << report.third << "   [must be finite]\n";
    std::cout << (report.pass() ? "weight accepted" : "weight rejected") << "\n";
    return report.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended-precision Newton-variant solver and convergence benchmark"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    try {
        g.precision = default_precision_from_env();
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    app.add_option("--precision", g.precision, "working precision in decimal digits (>= 50)")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"md", "csv"}))
        ->capture_default_str();
    app.add_option("--tol", g.tol, "step and residual tolerance (default 1e-(digits-20))");
    app.add_option("--max-iter", g.max_iter, "iteration cap")->capture_default_str();

    std::string expr_text, x0, method_name = "newton";
    std::string weight_spec = "chun", a_spec = "2/3";
    std::string table_choice = "all";
    std::string problem_id, bracket;

    CLI::App* solve = app.add_subcommand("solve", "iterate a method on f from x0");
    solve->add_option("--expr", expr_text, "expression in x")->required();
    solve->add_option("--x0", x0, "initial guess")->required();
    solve->add_option("--method", method_name, "iteration scheme")->required();
    solve->add_option("--weight", weight_spec, "weighted4 weight: chun or poly:<c0,c1,...>")
        ->capture_default_str();
    solve->add_option("--a", a_spec, "weighted4 first-step damping")->capture_default_str();

    CLI::App* bench = app.add_subcommand("bench", "reproduce the reference error tables");
    bench->add_option("--table", table_choice, "1, 2, 3 or all")
        ->check(CLI::IsMember({"1", "2", "3", "all"}))
        ->capture_default_str();

    CLI::App* analyze = app.add_subcommand("analyze", "convergence order and constants");
    analyze->add_option("--problem", problem_id, "builtin problem id (f1, f2, f3)");
    analyze->add_option("--expr", expr_text, "expression in x (with --bracket and --x0)");
    analyze->add_option("--bracket", bracket, "root bracket LO,HI");
    analyze->add_option("--x0", x0, "initial guess");
    analyze->add_option("--method", method_name, "iteration scheme")->required();
    analyze->add_option("--weight", weight_spec, "weighted4 weight")->capture_default_str();
    analyze->add_option("--a", a_spec, "weighted4 first-step damping")->capture_default_str();

    CLI::App* vw = app.add_subcommand("validate-weight", "check the fourth-order conditions");
    vw->add_option("--weight", weight_spec, "chun or poly:<c0,c1,...>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (solve->parsed())
            return cmd_solve(g, expr_text, x0, method_name, weight_spec, a_spec);
        if (bench->parsed())
            return cmd_bench(g, table_choice);
        if (analyze->parsed())
            return cmd_analyze(g, problem_id, expr_text, bracket, x0, method_name, weight_spec,
                               a_spec);
        if (vw->parsed())
            return cmd_validate_weight(g, weight_spec);
    } catch (const LexError& e) {
        std::cerr << "--expr: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "--expr: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}
