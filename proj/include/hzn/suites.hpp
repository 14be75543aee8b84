#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hzn/numerics.hpp"

namespace hzn {

// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne twister.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

struct SuiteOptions {
    int samples = 0;       // 0 selects the suite default
    double tol = 0.0;      // 0 selects the suite default
    std::uint64_t seed = 1;
};

struct SuiteDetail {
    std::string label;
    ComplexValue value;
};

struct SuiteOutcome {
    std::string suite;
    bool pass = false;
    double max_residual = 0.0;
    double tol = 0.0;
    int samples = 0;
    std::vector<SuiteDetail> details;
    std::vector<std::string> notes;
};

std::vector<std::string> suite_names();

// Runs one property suite. Unknown names raise UsageError.
SuiteOutcome run_suite(const std::string& name, const SuiteOptions& opt);

struct TableRow {
    std::size_t class_id = 0;
    double alpha = 0.0;
    double beta = 0.0;
    cplx reference{0.0, 0.0};
    bool has_reference = false;
};

// The six (class, twist) rows of the published D = 12, k = 2 table.
std::vector<TableRow> reference_table();

}  // namespace hzn
