// Drives one configured parameter sweep: expands the axis grid, evaluates
// each point (steady-state solve, perturbation theory, or Langevin run as
// the mode dictates), and collects a ResultTable. Failed points keep their
// row with NaN results and a raised error flag rather than aborting the
// whole sweep.
#pragma once

#include "kerrsync/config.hpp"
#include "kerrsync/table.hpp"

namespace kerrsync {

// Thread count resolution: explicit request > KERRSYNC_THREADS env var >
// hardware concurrency, minimum 1.
int resolve_threads(int requested);

// Points run on a worker pool; rows land at their grid index, so the table
// is identical for any thread count. Classical points draw their RNG seed
// from the config seed and the point index only.
ResultTable run_sweep(const SweepConfig& config, int threads = 0);

}  // namespace kerrsync
