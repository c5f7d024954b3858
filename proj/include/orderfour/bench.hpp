#ifndef ORDERFOUR_BENCH_HPP
#define ORDERFOUR_BENCH_HPP

#include "orderfour/analysis.hpp"
#include "orderfour/methods.hpp"
#include "orderfour/problems.hpp"
#include "orderfour/real.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace orderfour {

// |v| in the reference-table notation: normalized m*10^p with 1 <= m < 10
// printed as 0.mmmmm e(p+1), mantissa rounded to 5 significant digits
// (round half to even). Example: 4.28639e-10 -> "0.42864e-9".
std::string format_table_sci(const Real& v);

struct BenchCell {
    std::string computed;
    std::string golden;
    bool match = false;
};

struct BenchRow {
    std::string method;
    std::array<BenchCell, 3> cells;
    Trace trace;  // the three-iteration run behind the cells
};

struct BenchTable {
    int table_id = 0;
    std::string problem_id;
    std::vector<BenchRow> rows;
    int matched = 0;
    int mismatched = 0;
    int precision_used = 0;
    bool escalated = false;
    Real alpha;
};

// Computes one reference table at decimal_digits and diffs against the
// golden cells. Recomputed once at doubled precision when any third-iterate
// error drops below the usability floor or any cell mismatches; cells that
// still mismatch are findings, not errors.
BenchTable run_table(int table_id, int decimal_digits);

std::string render_table_md(const BenchTable& t);
std::string render_table_csv(const BenchTable& t);       // header + data rows
std::string render_table_csv_rows(const BenchTable& t);  // data rows only
extern const char* const kCsvHeader;

// Trace renderers shared by the solve subcommand.
std::string render_trace_md(const Trace& trace);
std::string render_trace_csv(const std::string& problem_id, const std::string& method,
                             const Trace& trace, const std::optional<Real>& alpha);

std::string render_report_md(const ConvergenceReport& r);

}  // namespace orderfour

#endif
