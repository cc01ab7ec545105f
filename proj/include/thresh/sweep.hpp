#pragma once

// Exhaustive (tau_action, tau_reason) grid evaluation and its post-analysis:
// per-metric peaks, degradation at the top of the grid, and the robust
// operating region.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "thresh/metrics.hpp"
#include "thresh/model.hpp"

namespace thresh {

struct SweepConfig {
    double tau_min = 0.1;
    double tau_max = 0.9;
    double step = 0.1;
    double robust_rel_tol = 0.03;
    EmptyF1 empty_f1 = EmptyF1::one;

    /// Throws InputError(invalid_config) unless 0 <= tau_min <= tau_max <= 1,
    /// step > 0, and (tau_max - tau_min) is a whole number of steps.
    void validate() const;
};

/// tau_min + k*step for k = 0..round((tau_max-tau_min)/step), indexed rather
/// than accumulated, and snapped to 12 decimals.
std::vector<double> make_grid(const SweepConfig& cfg);

enum class Metric { action_overall, action_mean, reason_overall, reason_mean };

inline constexpr std::array<Metric, 4> kMetrics = {
    Metric::action_overall, Metric::action_mean, Metric::reason_overall, Metric::reason_mean};

/// "f1_action_overall" etc.
std::string_view metric_name(Metric m);
Task metric_task(Metric m);
/// Accepts "f1_action_overall", "F1-action-overall", "action overall", ...
Metric parse_metric(std::string_view text);

struct CellMetrics {
    double action_overall = 0.0;
    double action_mean = 0.0;
    double reason_overall = 0.0;
    double reason_mean = 0.0;

    double value(Metric m) const noexcept;
    bool operator==(const CellMetrics&) const = default;
};

enum class Provenance { computed, fixture };
std::string_view to_string(Provenance p);

struct MetricLandscape {
    std::vector<double> grid;
    std::vector<CellMetrics> cells;  // row-major: [action index][reason index]
    Provenance provenance = Provenance::computed;
    std::size_t evaluations = 0;     // task_metrics calls spent building it

    std::size_t size() const noexcept { return grid.size(); }
    const CellMetrics& at(std::size_t action_index, std::size_t reason_index) const {
        return cells.at(action_index * grid.size() + reason_index);
    }
    /// Values of one metric along its own threshold axis.
    std::vector<double> profile(Metric m) const;

    bool operator==(const MetricLandscape&) const = default;
};

/// Marginal evaluation: one task_metrics call per grid threshold per task,
/// spread over OpenMP threads (threads <= 0 keeps the runtime default), then
/// broadcast into the matrix. Output does not depend on the schedule.
MetricLandscape run_sweep(const EvalSet& es, const SweepConfig& cfg, int threads = 0);

/// Single-threaded reference for run_sweep.
MetricLandscape run_sweep_serial(const EvalSet& es, const SweepConfig& cfg);

struct Peak {
    Metric metric;
    std::size_t index;
    double threshold;
    double value;
    double degradation;  // value minus the value at the last grid point
};

struct PeakReport {
    std::array<Peak, 4> peaks;
    const Peak& of(Metric m) const { return peaks[static_cast<std::size_t>(m)]; }
};

/// Argmax of each metric along its own axis; ties go to the lowest threshold.
PeakReport find_peaks(const MetricLandscape& ls);

struct RegionExclusion {
    std::size_t index;
    double threshold;
    std::vector<Metric> failed;
};

struct RobustRegion {
    double rel_tol = 0.0;
    std::vector<std::size_t> indices;
    std::vector<double> thresholds;
    std::vector<RegionExclusion> excluded;
    bool contiguous = true;
};

/// Grid points where all four metrics are >= (1 - rel_tol) * their peak.
RobustRegion robust_region(const MetricLandscape& ls, double rel_tol);

/// A percent-valued metric table as transcribed from a report: one row per
/// metric, thresholds ascending.
struct FixtureTable {
    std::vector<double> thresholds;
    std::array<std::vector<double>, 4> percent;  // indexed by Metric
};

/// Parses the CSV layout "metric,<t1>,<t2>,..." with one row per metric, or
/// the transposed "threshold,<metric>,..." layout with one row per threshold.
/// Orientation is detected from the first header cell.
FixtureTable parse_fixture_csv(std::string_view text);

/// Throws InputError(grid_mismatch) if the table thresholds differ from grid.
MetricLandscape load_landscape_fixture(const FixtureTable& table, const std::vector<double>& grid);

}  // namespace thresh
