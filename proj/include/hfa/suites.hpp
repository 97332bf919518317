#pragma once

// Verification suites over the whole toolkit, and refinement tables.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfa/config.hpp"
#include "hfa/errors.hpp"
#include "hfa/report.hpp"

namespace hfa {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// group, representation, plancherel, inversion, fusion, dualconv, derivation,
/// inequalities, lie. "all" runs them in this order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

struct SuiteOptions {
    /// Run the built-in refinement ladders (improvement-under-refinement checks).
    bool refinement = true;
};

/// Throws UsageError for an unknown suite name. Deterministic for a fixed config.
Report run_suite(const std::string& name, const RunConfig& cfg, const SuiteOptions& opt = {});

/// Every scale refined by `level` (see refine); fusion grids double with L * sqrt 2,
/// and the representation ladder top doubles.
RunConfig refine_config(const RunConfig& cfg, int level);

struct ConvergenceRow {
    std::string suite;
    std::string check;
    int level = 0;
    std::size_t n_points = 0;
    double value = 0;
    double ratio = 0;  // previous level / this level; NaN on the first level
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
};

class ConvergenceCapacityError : public CapacityError {
public:
    ConvergenceCapacityError(const std::string& what, ConvergenceTable partial)
        : CapacityError(what), partial_(std::move(partial)) {}
    const ConvergenceTable& partial() const { return partial_; }

private:
    ConvergenceTable partial_;
};

/// Runs the suite (without its own ladders) at levels 0 .. levels-1 and tabulates
/// every check value. The representation suite starts its ladder at 16 points.
/// Throws UsageError for levels < 2, ConvergenceCapacityError when a level exceeds
/// max_n_points / max_tensor_n_points.
ConvergenceTable convergence_table(const std::string& suite, const RunConfig& cfg, int levels);

void write_csv(std::ostream& os, const ConvergenceTable& table);

}  // namespace hfa
