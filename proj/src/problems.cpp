#include "orderfour/problems.hpp"

#include "orderfour/errors.hpp"

namespace orderfour {

const std::vector<Problem>& builtin_problems() {
    static const std::vector<Problem> problems = {
        {"f1", "exp(-x)-1+x/5", "5", "4", "6",
         "peak-wavelength condition from the blackbody radiation law"},
        {"f2", "(x^3+2.87*x^2-10.28)/4.62 - x", "2.5", "1", "3",
         "embedment depth of a sheet-pile wall"},
        {"f3", "(x + cos(x)*sin(x))/pi - 1/4", "0.4", "0.1", "1",
         "strip-footing vertical stress ratio"},
    };
    return problems;
}

const Problem* find_problem(std::string_view id) {
    for (const Problem& p : builtin_problems())
        if (p.id == id)
            return &p;
    return nullptr;
}

const std::array<const char*, 7>& table_method_names() {
    static const std::array<const char*, 7> names = {
        "newton", "weerakoon", "homeier", "bisectrix",
        "chun3",  "inverse-bisectrix", "weighted4",
    };
    return names;
}

const std::array<GoldenTable, 3>& golden_tables() {
    // Embedded verbatim from the source tables. Two data notes:
    //  - table 2, bisectrix row, third cell is printed "0.10016-25" in the
    //    source (missing the exponent marker); embedded as 0.10016e-25.
    //  - table 3, weighted4 row, first cell is printed 0.25102e-8 but is
    //    inconsistent with the row's own later iterates, which imply
    //    0.25102e-7; kept verbatim so the diff surfaces it.
    static const std::array<GoldenTable, 3> tables = {{
        {1,
         "f1",
         {{
             {"0.21464e-4", "0.83264e-11", "0.12530e-23"},
             {"0.11208e-6", "0.37810e-23", "0.14517e-72"},
             {"0.12544e-6", "0.59456e-23", "0.63310e-72"},
             {"0.11256e-6", "0.38466e-23", "0.15352e-72"},
             {"0.98734e-7", "0.22705e-23", "0.27611e-73"},
             {"0.11256e-6", "0.38466e-23", "0.15352e-72"},
             {"0.42864e-9", "0.10085e-40", "0.30899e-167"},
         }}},
        {2,
         "f2",
         {{
             {"0.85925e-1", "0.32675e-2", "0.50032e-5"},
             {"0.18271e-1", "0.14770e-5", "0.79610e-18"},
             {"0.49772e-2", "0.33027e-8", "0.95318e-27"},
             {"0.54594e-2", "0.63617e-8", "0.10016e-25"},
             {"0.27815e-1", "0.95903e-5", "0.41254e-15"},
             {"0.54594e-2", "0.63617e-8", "0.10016e-25"},
             {"0.80338e-2", "0.15138e-8", "0.19455e-35"},
         }}},
        {3,
         "f3",
         {{
             {"0.10737e-3", "0.50901e-8", "0.11442e-16"},
             {"0.20631e-6", "0.53436e-21", "0.92858e-65"},
             {"0.52795e-6", "0.19743e-19", "0.10325e-59"},
             {"0.42239e-7", "0.13373e-23", "0.42435e-73"},
             {"0.93064e-6", "0.20624e-18", "0.22446e-56"},
             {"0.42239e-7", "0.13373e-23", "0.42435e-73"},
             {"0.25102e-8", "0.17099e-30", "0.36814e-123"},
         }}},
    }};
    return tables;
}

const GoldenTable& golden_table(int table_id) {
    for (const GoldenTable& t : golden_tables())
        if (t.table_id == table_id)
            return t;
    throw Error("no table " + std::to_string(table_id) + "; valid ids are 1, 2, 3");
}

}  // namespace orderfour
