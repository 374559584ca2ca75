#pragma once

#include <iosfwd>
#include <vector>

#include "lbm/config.hpp"
#include "lbm/energy.hpp"
#include "lbm/metrics.hpp"

namespace lbm {

/// Runs the layout x vl x workers Cartesian product, timing propagate,
/// collide and the full step for each cell (three CSV rows per cell).
/// Energy columns appear when requested and the provider has counters.
/// Per-cell failures land in the row's status field; the run continues.
std::vector<BenchReport> run_bench_matrix(const RunConfig& config, EnergyProvider* provider,
                                          std::ostream& csv, std::ostream& log);

/// Host trend summary: per-layout medians of the propagate and collide rows,
/// and the clustered-vs-flat ratios. Informational, nothing is asserted.
void write_trend_summary(std::ostream& os, const std::vector<BenchReport>& reports);

}  // namespace lbm
