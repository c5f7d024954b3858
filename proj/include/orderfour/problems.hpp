#ifndef ORDERFOUR_PROBLEMS_HPP
#define ORDERFOUR_PROBLEMS_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace orderfour {

// A benchmark problem: everything needed to solve and to measure errors.
struct Problem {
    std::string id;
    std::string expr_text;
    std::string x0;
    std::string bracket_lo;
    std::string bracket_hi;
    std::string description;
};

const std::vector<Problem>& builtin_problems();
const Problem* find_problem(std::string_view id);  // nullptr when unknown

// Reference error table: for each of the seven methods (row order: newton,
// weerakoon, homeier, bisectrix, chun3, inverse-bisectrix, weighted4), the
// magnitudes |x_k - alpha| for k = 1, 2, 3 in the 0.mmmmm e<p> notation
// (value = 0.mmmmm * 10^p).
struct GoldenTable {
    int table_id;
    const char* problem_id;
    std::array<std::array<const char*, 3>, 7> cells;
};

const std::array<GoldenTable, 3>& golden_tables();
const GoldenTable& golden_table(int table_id);

// Method names in golden row order.
const std::array<const char*, 7>& table_method_names();

}  // namespace orderfour

#endif
