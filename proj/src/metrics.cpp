#include "thresh/metrics.hpp"

#include <string>

namespace thresh {

EmptyF1 parse_empty_f1(std::string_view text) {
    if (text == "one") return EmptyF1::one;
    if (text == "zero") return EmptyF1::zero;
    throw InputError(ErrorKind::invalid_config,
                     "empty-f1 must be 'one' or 'zero', got '" + std::string(text) + "'");
}

std::string_view to_string(EmptyF1 convention) {
    return convention == EmptyF1::one ? "one" : "zero";
}

std::vector<std::uint8_t> binarize(std::span<const double> scores, double tau) {
    std::vector<std::uint8_t> out(scores.size());
    for (std::size_t j = 0; j < scores.size(); ++j) out[j] = scores[j] > tau ? 1 : 0;
    return out;
}

ConfusionCounts confusion(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth) {
    if (pred.size() != truth.size()) {
        throw InputError(ErrorKind::length_mismatch,
                         "prediction and truth lengths differ (" + std::to_string(pred.size()) +
                             " vs " + std::to_string(truth.size()) + ")");
    }
    ConfusionCounts c;
    for (std::size_t j = 0; j < pred.size(); ++j) {
        if (pred[j]) {
            truth[j] ? ++c.tp : ++c.fp;
        } else {
            truth[j] ? ++c.fn : ++c.tn;
        }
    }
    return c;
}

double precision(const ConfusionCounts& c) noexcept {
    const auto denom = c.tp + c.fp;
    return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall(const ConfusionCounts& c) noexcept {
    const auto denom = c.tp + c.fn;
    return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f1(const ConfusionCounts& c, EmptyF1 empty) noexcept {
    const auto denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) return empty == EmptyF1::one ? 1.0 : 0.0;
    return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

std::vector<ConfusionCounts> class_confusions(const EvalSet& es, Task task, double tau) {
    std::vector<ConfusionCounts> per_class(es.class_count(task));
    for (const auto& rec : es.records()) {
        const auto& scores = rec.scores(task);
        const auto& truth = rec.truth(task);
        for (std::size_t j = 0; j < scores.size(); ++j) {
            const bool pred = scores[j] > tau;
            auto& c = per_class[j];
            if (pred) {
                truth[j] ? ++c.tp : ++c.fp;
            } else {
                truth[j] ? ++c.fn : ++c.tn;
            }
        }
    }
    return per_class;
}

TaskMetrics task_metrics(const EvalSet& es, Task task, double tau, EmptyF1 empty) {
    const std::size_t n_classes = es.class_count(task);
    std::vector<ConfusionCounts> per_class(n_classes);
    TaskMetrics m;
    m.per_sample_f1.reserve(es.size());

    // One pass: per-record counts feed the sample F1 and the class columns.
    for (const auto& rec : es.records()) {
        const auto& scores = rec.scores(task);
        const auto& truth = rec.truth(task);
        ConfusionCounts sample;
        for (std::size_t j = 0; j < n_classes; ++j) {
            const bool pred = scores[j] > tau;
            auto& c = per_class[j];
            if (pred) {
                if (truth[j]) { ++sample.tp; ++c.tp; } else { ++sample.fp; ++c.fp; }
            } else {
                if (truth[j]) { ++sample.fn; ++c.fn; } else { ++sample.tn; ++c.tn; }
            }
        }
        m.per_sample_f1.push_back(f1(sample, empty));
    }

    m.per_class_f1.reserve(n_classes);
    for (const auto& c : per_class) m.per_class_f1.push_back(f1(c, empty));

    // Left-to-right sums keep the means reproducible bit-for-bit.
    double sample_sum = 0.0;
    for (double v : m.per_sample_f1) sample_sum += v;
    double class_sum = 0.0;
    for (double v : m.per_class_f1) class_sum += v;
    m.overall_f1 = sample_sum / static_cast<double>(m.per_sample_f1.size());
    m.mean_f1 = class_sum / static_cast<double>(m.per_class_f1.size());
    return m;
}

}  // namespace thresh
