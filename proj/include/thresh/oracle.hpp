#pragma once

// Brute-force reference implementations. They share types with the
// production modules but none of their code paths, and exist to check them.

#include <optional>
#include <span>

#include "thresh/metrics.hpp"
#include "thresh/model.hpp"
#include "thresh/sweep.hpp"

namespace thresh::oracle {

/// Naive double loops: one pass per record for sample F1, one pass per class
/// over all records for class F1.
TaskMetrics oracle_task_metrics(const EvalSet& es, Task task, double tau,
                                EmptyF1 empty = EmptyF1::one);

/// Full rescan at every distinct score, then step summation.
std::optional<double> oracle_average_precision(std::span<const double> scores,
                                               std::span<const std::uint8_t> labels);

/// Every (tau_action, tau_reason) cell recomputed from scratch.
MetricLandscape naive_sweep(const EvalSet& es, const SweepConfig& cfg);

}  // namespace thresh::oracle
