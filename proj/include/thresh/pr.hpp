#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "thresh/model.hpp"

namespace thresh {

struct PRPoint {
    double threshold;  // a score s is predicted positive when s > threshold
    double precision;
    double recall;
    bool is_grid_marker;
    ConfusionCounts counts;
};

struct PRCurve {
    Task task;
    std::size_t class_index;
    std::size_t positives;
    std::vector<PRPoint> points;               // descending threshold
    std::optional<double> average_precision;  // absent when the class has no positives
};

/// Step-integrated AP: sum over descending distinct score cuts of
/// (R_k - R_{k-1}) * P_k. Tied scores enter together. Returns nullopt when no
/// label is positive. Throws InputError(length_mismatch) on unequal lengths.
std::optional<double> average_precision(std::span<const double> scores,
                                         std::span<const std::uint8_t> labels);

/// One point per distinct score of the class (cut placed between that score
/// and the next lower one) plus one marker point per grid threshold.
PRCurve pr_curve(const EvalSet& es, Task task, std::size_t class_index,
                 const std::vector<double>& grid);

/// Curves for every class of a task, computed in parallel.
std::vector<PRCurve> pr_curves(const EvalSet& es, Task task, const std::vector<double>& grid,
                               int threads = 0);

/// Single-threaded reference for pr_curves.
std::vector<PRCurve> pr_curves_serial(const EvalSet& es, Task task, const std::vector<double>& grid);

}  // namespace thresh
