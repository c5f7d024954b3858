#include "orderfour/bench.hpp"

#include "orderfour/errors.hpp"

#include <iomanip>
#include <sstream>

namespace orderfour {

std::string format_table_sci(const Real& v) {
    if (v == 0)
        return "0.00000e0";
    mpfr_exp_t exponent = 0;
    char* raw = mpfr_get_str(nullptr, &exponent, 10, 5, v.backend().data(), MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    return sign + "0." + digits + "e" + std::to_string(static_cast<long>(exponent));
}

namespace {

std::string fmt_fixed(const Real& v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

struct ComputedCells {
    std::vector<BenchRow> rows;
    bool third_iterate_underflow = false;
    Real alpha;
};

ComputedCells compute_cells(const GoldenTable& golden, const Problem& problem, int digits) {
    ScopedPrecision scope(digits);
    ComputedCells out;

    const ExprPtr f = parse(problem.expr_text);
    const RootReference ref =
        reference_root(*f, make_real(problem.bracket_lo), make_real(problem.bracket_hi));
    out.alpha = ref.alpha;
    const Real floor_value = pow10(-digits + 30);

    IterationSettings settings = IterationSettings::defaults(digits);
    settings.max_iter = 3;

    for (std::size_t i = 0; i < table_method_names().size(); ++i) {
        const MethodKind method = *MethodKind::from_name(table_method_names()[i]);
        BenchRow row;
        row.method = method.name();
        row.trace = run(*f, method, make_real(problem.x0), settings);
        for (int k = 1; k <= 3; ++k) {
            BenchCell& cell = row.cells[static_cast<std::size_t>(k - 1)];
            cell.golden = golden.cells[i][static_cast<std::size_t>(k - 1)];
            if (static_cast<std::size_t>(k) < row.trace.iterates.size()) {
                const Real err = abs(row.trace.iterates[static_cast<std::size_t>(k)] - out.alpha);
                cell.computed = format_table_sci(err);
                if (k == 3 && err <= floor_value)
                    out.third_iterate_underflow = true;
            } else {
                cell.computed = "n/a";
                out.third_iterate_underflow = true;
            }
            cell.match = cell.computed == cell.golden;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace

BenchTable run_table(int table_id, int decimal_digits) {
    const GoldenTable& golden = golden_table(table_id);
    const Problem* problem = find_problem(golden.problem_id);
    if (!problem)
        throw Error("table problem not registered: " + std::string(golden.problem_id));

    ComputedCells cells = compute_cells(golden, *problem, decimal_digits);
    bool needs_rerun = cells.third_iterate_underflow;
    for (const BenchRow& row : cells.rows)
        for (const BenchCell& c : row.cells)
            if (!c.match)
                needs_rerun = true;

    bool escalated = false;
    if (needs_rerun) {
        cells = compute_cells(golden, *problem, 2 * decimal_digits);
        escalated = true;
    }

    BenchTable table;
    table.table_id = table_id;
    table.problem_id = golden.problem_id;
    table.rows = std::move(cells.rows);
    table.precision_used = escalated ? 2 * decimal_digits : decimal_digits;
    table.escalated = escalated;
    table.alpha = cells.alpha;
    for (const BenchRow& row : table.rows)
        for (const BenchCell& c : row.cells)
            c.match ? ++table.matched : ++table.mismatched;
    return table;
}

std::string render_table_md(const BenchTable& t) {
    std::ostringstream os;
    os << "## table " << t.table_id << " (problem " << t.problem_id << ", "
       << t.precision_used << " digits" << (t.escalated ? ", re-run at doubled precision" : "")
       << ")\n\n";
    os << "| method | |x1 - alpha| | |x2 - alpha| | |x3 - alpha| |\n";
    os << "|---|---|---|---|\n";
    for (const BenchRow& row : t.rows) {
        os << "| " << row.method << " |";
        for (const BenchCell& c : row.cells) {
            os << " " << c.computed;
            if (!c.match)
                os << " [ref " << c.golden << "]";
            os << " |";
        }
        os << "\n";
    }
    os << "\ncells matched: " << t.matched << ", mismatched: " << t.mismatched << "\n";
    for (const BenchRow& row : t.rows)
        for (std::size_t k = 0; k < row.cells.size(); ++k)
            if (!row.cells[k].match)
                os << "MISMATCH table " << t.table_id << ", " << row.method << ", iteration "
                   << (k + 1) << ": computed " << row.cells[k].computed << ", reference "
                   << row.cells[k].golden << "\n";
    return os.str();
}

const char* const kCsvHeader = "problem_id,method,iteration,x_n,abs_error,residual,stop_reason\n";

namespace {

void append_csv_row(std::ostringstream& os, const std::string& problem_id,
                    const std::string& method, std::size_t iteration, const Real& x,
                    const std::optional<Real>& abs_error, const Real& residual,
                    StopReason stop) {
    os << problem_id << "," << method << "," << iteration << "," << to_sci_string(x, 30) << ",";
    if (abs_error)
        os << to_sci_string(*abs_error, 30);
    os << "," << to_sci_string(residual, 30) << "," << to_string(stop) << "\n";
}

}  // namespace

std::string render_table_csv_rows(const BenchTable& t) {
    std::ostringstream os;
    for (const BenchRow& row : t.rows)
        for (std::size_t n = 0; n < row.trace.iterates.size(); ++n)
            append_csv_row(os, t.problem_id, row.method, n, row.trace.iterates[n],
                           abs(row.trace.iterates[n] - t.alpha), row.trace.residuals[n],
                           row.trace.stop);
    return os.str();
}

std::string render_table_csv(const BenchTable& t) {
    return kCsvHeader + render_table_csv_rows(t);
}

std::string render_trace_md(const Trace& trace) {
    std::ostringstream os;
    os << "| n | x_n | |f(x_n)| | step |\n|---|---|---|---|\n";
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        os << "| " << n << " | " << to_sci_string(trace.iterates[n], 30) << " | "
           << to_sci_string(abs(trace.residuals[n]), 6) << " | ";
        if (n)
            os << to_sci_string(abs(trace.iterates[n] - trace.iterates[n - 1]), 6);
        os << " |\n";
    }
    os << "\nstop: " << to_string(trace.stop) << " after " << (trace.iterates.size() - 1)
       << " iterations (" << trace.evals_used << " evaluations)\n";
    return os.str();
}

std::string render_trace_csv(const std::string& problem_id, const std::string& method,
                             const Trace& trace, const std::optional<Real>& alpha) {
    std::ostringstream os;
    os << kCsvHeader;
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        std::optional<Real> err;
        if (alpha)
            err = abs(trace.iterates[n] - *alpha);
        append_csv_row(os, problem_id, method, n, trace.iterates[n], err, trace.residuals[n],
                       trace.stop);
    }
    return os.str();
}

std::string render_report_md(const ConvergenceReport& r) {
    std::ostringstream os;
    os << "coc sequence:";
    for (const Real& rho : r.coc_sequence)
        os << " " << fmt_fixed(rho, 4);
    os << "\nfinal coc: " << fmt_fixed(r.final_coc, 4) << "\n";
    if (r.order)
        os << "theoretical order: " << *r.order << "\n"
           << "efficiency index: " << fmt_fixed(r.efficiency, 4) << "\n";
    else
        os << "theoretical order: unknown (a != 2/3); empirical only\n";
    if (r.empirical_constant)
        os << "empirical constant |e_{n+1}|/|e_n|^p: "
           << to_sci_string(*r.empirical_constant, 8) << "\n";
    if (r.predicted_constant) {
        os << "predicted constant: " << to_sci_string(*r.predicted_constant, 8) << "\n";
        if (r.empirical_constant) {
            const Real pred = abs(*r.predicted_constant);
            const Real emp = abs(*r.empirical_constant);
            const Real rel = pred == 0 ? emp : Real(abs(emp - pred) / pred);
            os << "agreement: relative difference " << to_sci_string(rel, 3) << " -> "
               << (rel <= make_real("0.10") ? "within 10%" : "DISCREPANCY (> 10%)") << "\n";
        }
    }
    os << "precision: " << r.precision_used << " digits"
       << (r.escalated ? " (escalated)" : "") << "\n";
    return os.str();
}

}  // namespace orderfour
