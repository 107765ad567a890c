#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rostlab/quadform.hpp"

namespace rostlab {

/***
 * Property-verification suites.  Each suite walks a space of cells
 * (one tower/class/sample per cell), runs an independent check in
 * every cell, and reduces the outcomes.  Cells are independent, so the
 * sweep runs under a worker pool; the reduction is associative and
 * commutative and the reported result does not depend on the number
 * of workers.  A serial reference loop is kept for testing and for
 * the benchmark target.
 */

struct TowerSpec {
    int q = 3;
    int ell = 2;
    int n = 1;
    int depth = 2;
};

struct SuiteOptions {
    unsigned long long seed = 0;  // base seed for randomized suites
    long long samples = 10000;    // per-tower sample count (randomized suites)
    int jobs = 0;                 // worker count; 0 uses the machine default
    bool parallel = true;         // false runs the serial reference loop
    std::optional<TowerSpec> tower;  // restrict the sweep to one tower
};

struct CellFailure {
    long long cell = 0;      // flat cell index within the suite
    std::string detail;      // what the counterexample or error was
};

struct SuiteResult {
    std::string suite;
    long long cells = 0;
    long long verified = 0;
    long long inconclusive = 0;
    std::vector<CellFailure> failures;  // sorted by cell index

    // 0 all verified, 1 counterexample, 3 inconclusive cells present.
    int exit_code() const noexcept {
        if (!failures.empty()) return 1;
        return inconclusive > 0 ? 3 : 0;
    }
};

// The suites, in their canonical order.
const std::vector<std::string>& suite_names();

// Runs one suite to completion.  Unknown names raise UnknownSuite;
// a tower restriction the suite cannot host raises PreconditionViolated.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace rostlab
