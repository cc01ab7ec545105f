#include "thresh/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace thresh::oracle {

namespace {

double ratio_f1(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, EmptyF1 empty) {
    const std::uint64_t num = 2 * tp;
    const std::uint64_t den = 2 * tp + fp + fn;
    if (den == 0) return empty == EmptyF1::one ? 1.0 : 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

TaskMetrics oracle_task_metrics(const EvalSet& es, Task task, double tau, EmptyF1 empty) {
    const auto& records = es.records();
    const std::size_t n_classes = es.class_count(task);
    TaskMetrics out;

    for (std::size_t i = 0; i < records.size(); ++i) {
        std::uint64_t tp = 0, fp = 0, fn = 0;
        for (std::size_t j = 0; j < n_classes; ++j) {
            const int predicted = records[i].scores(task)[j] > tau ? 1 : 0;
            const int actual = records[i].truth(task)[j];
            if (predicted == 1 && actual == 1) tp++;
            if (predicted == 1 && actual == 0) fp++;
            if (predicted == 0 && actual == 1) fn++;
        }
        out.per_sample_f1.push_back(ratio_f1(tp, fp, fn, empty));
    }

    for (std::size_t j = 0; j < n_classes; ++j) {
        std::uint64_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const int predicted = records[i].scores(task)[j] > tau ? 1 : 0;
            const int actual = records[i].truth(task)[j];
            if (predicted == 1 && actual == 1) tp++;
            if (predicted == 1 && actual == 0) fp++;
            if (predicted == 0 && actual == 1) fn++;
        }
        out.per_class_f1.push_back(ratio_f1(tp, fp, fn, empty));
    }

    double s = 0.0;
    for (std::size_t i = 0; i < out.per_sample_f1.size(); ++i) s = s + out.per_sample_f1[i];
    out.overall_f1 = s / static_cast<double>(out.per_sample_f1.size());
    s = 0.0;
    for (std::size_t j = 0; j < out.per_class_f1.size(); ++j) s = s + out.per_class_f1[j];
    out.mean_f1 = s / static_cast<double>(out.per_class_f1.size());
    return out;
}

std::optional<double> oracle_average_precision(std::span<const double> scores,
                                               std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size()) {
        throw InputError(ErrorKind::length_mismatch, "scores and labels differ in length");
    }
    std::size_t positives = 0;
    for (auto l : labels) positives += l;
    if (positives == 0) return std::nullopt;

    const std::set<double, std::greater<>> distinct(scores.begin(), scores.end());
    double ap = 0.0;
    double prev_recall = 0.0;
    for (double cut : distinct) {
        std::size_t tp = 0, predicted = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= cut) {
                ++predicted;
                tp += labels[i];
            }
        }
        const double r = static_cast<double>(tp) / static_cast<double>(positives);
        const double p = static_cast<double>(tp) / static_cast<double>(predicted);
        ap += (r - prev_recall) * p;
        prev_recall = r;
    }
    return ap;
}

MetricLandscape naive_sweep(const EvalSet& es, const SweepConfig& cfg) {
    MetricLandscape ls;
    ls.grid = make_grid(cfg);
    ls.provenance = Provenance::computed;
    for (double tau_a : ls.grid) {
        for (double tau_r : ls.grid) {
            const auto a = oracle_task_metrics(es, Task::action, tau_a, cfg.empty_f1);
            const auto r = oracle_task_metrics(es, Task::reason, tau_r, cfg.empty_f1);
            ls.cells.push_back({a.overall_f1, a.mean_f1, r.overall_f1, r.mean_f1});
            ls.evaluations += 2;
        }
    }
    return ls;
}

}  // namespace thresh::oracle
