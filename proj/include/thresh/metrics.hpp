#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thresh/model.hpp"

namespace thresh {

/// F1 value used when tp = fp = fn = 0 (nothing positive on either side).
enum class EmptyF1 { one, zero };

EmptyF1 parse_empty_f1(std::string_view text);
std::string_view to_string(EmptyF1 convention);

struct TaskMetrics {
    double overall_f1 = 0.0;  // mean of per_sample_f1
    double mean_f1 = 0.0;     // mean of per_class_f1
    std::vector<double> per_class_f1;
    std::vector<double> per_sample_f1;

    bool operator==(const TaskMetrics&) const = default;
};

/// 1 exactly when score > tau. A score equal to tau is negative.
std::vector<std::uint8_t> binarize(std::span<const double> scores, double tau);

/// Throws InputError(length_mismatch) when the vectors differ in length.
ConfusionCounts confusion(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth);

/// tp/(tp+fp), 0 when nothing is predicted positive.
double precision(const ConfusionCounts& c) noexcept;
/// tp/(tp+fn), 0 when nothing is truly positive.
double recall(const ConfusionCounts& c) noexcept;
/// 2tp/(2tp+fp+fn); the empty case returns 1 or 0 per `empty`.
double f1(const ConfusionCounts& c, EmptyF1 empty = EmptyF1::one) noexcept;

/// Sample-averaged and class-averaged F1 for one task at one threshold.
TaskMetrics task_metrics(const EvalSet& es, Task task, double tau,
                         EmptyF1 empty = EmptyF1::one);

/// Column-wise (per-class) confusion counts at one threshold.
std::vector<ConfusionCounts> class_confusions(const EvalSet& es, Task task, double tau);

}  // namespace thresh
