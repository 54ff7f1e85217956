#pragma once

#include "rcmetro/config.hpp"
#include "rcmetro/table.hpp"

namespace rcmetro {

struct SweepResult {
    Table table;
    int unconverged = 0;  // rows flagged converged = false
};

/// Column layout produced for a model (see README for the meaning of each).
std::vector<Column> sweep_columns(ModelKind model);

/// Evaluates every (curve, grid value) pair on `jobs` worker threads. Rows
/// come out in curve order, then ascending grid value, independent of `jobs`.
/// Truncation failures are flagged per row; any other error aborts the run
/// and is rethrown (first failing point in row order).
SweepResult run_sweep(const SweepConfig& cfg, int jobs = 1);

/// Lowest-level ground energy of the maximal-J sector by exact
/// diagonalization, and its second eps-derivative (five-point, step h).
double exact_ground_curvature(const ProbeParams& p, int n_max, double h = 1e-2);

}  // namespace rcmetro
