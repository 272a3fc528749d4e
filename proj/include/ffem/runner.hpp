#pragma once

#include "ffem/config.hpp"
#include "ffem/csv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffem {

/// Through-thickness axial stress at x1 = L/2.
struct StressSample {
    double x3 = 0.0;
    double sigma = 0.0;
    double normalized = 0.0;  ///< NaN when q0 = 0
};

struct CaseResult {
    GridPoint point;
    int elements = 0;
    std::optional<SolutionField> solution;  ///< empty when the solve failed
    std::string error;
    std::vector<StressSample> stress;
};

struct RunReport {
    RunConfig config;
    std::vector<CaseResult> cases;  ///< in grid order

    bool any_failure() const;
};

/// Solves every grid point. Points run concurrently on up to `threads` workers
/// (0 = hardware concurrency); results do not depend on the thread count. A failing
/// point is recorded and the batch continues.
RunReport run_grid(const RunConfig& config, unsigned threads = 0);

/// Solves one grid point of a configuration.
CaseResult run_case(const RunConfig& config, const GridPoint& point);

ResultTable displacement_table(const RunReport& report, std::size_t index, bool reproducible = true);
ResultTable stress_table(const RunReport& report, std::size_t index, bool reproducible = true);

struct NamedTable {
    std::string file;
    ResultTable table;
};
/// Sweep tables along the chosen parameter, one per combination of the other swept
/// parameters.
std::vector<NamedTable> sweep_tables(const RunReport& report, bool reproducible = true);

/// Writes the requested tables into `directory` (created if needed) and returns the
/// paths in write order. `force_sweep` writes sweep tables even without a swept
/// parameter; `profiles` controls displacement and stress tables.
std::vector<std::string> write_outputs(const RunReport& report, const std::string& directory,
                                       bool reproducible = true, bool profiles = true,
                                       bool force_sweep = false);

}  // namespace ffem
