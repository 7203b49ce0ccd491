#pragma once

#include <cstddef>
#include <iosfwd>

#include "casipol/config.hpp"

// Executes a parsed job: evaluates every sweep point and writes one CSV
// row per point. Rows are computed (possibly in parallel) and emitted in
// sweep order, so the output bytes do not depend on the thread count.

namespace casipol {

struct RunOptions {
    double rel_tol_override = 0.0;  // 0 keeps the configured tolerance
    bool reduced = false;           // add dimensionless potential columns (cp tasks)
    int threads = 1;
};

struct RunReport {
    int exit_code = 0;  // 0 all rows converged, 2 otherwise
    std::size_t rows = 0;
    std::size_t unconverged = 0;
};

RunReport run_job(const JobConfig& config, const RunOptions& options, std::ostream& out);

}  // namespace casipol
