#include "thresh/pr.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <omp.h>

#include "thresh/metrics.hpp"

namespace thresh {

namespace {

struct Cut {
    double score;      // lowest score included by this cut
    double threshold;  // effective strict threshold
    ConfusionCounts counts;
};

// Walks distinct scores from high to low; every cut admits one tie group.
std::vector<Cut> descending_cuts(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::uint64_t positives = 0;
    for (auto l : labels) positives += l ? 1 : 0;
    const std::uint64_t negatives = labels.size() - positives;

    std::vector<Cut> cuts;
    ConfusionCounts running{0, 0, positives, negatives};
    std::size_t i = 0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) {
            if (labels[order[i]]) {
                ++running.tp;
                --running.fn;
            } else {
                ++running.fp;
                --running.tn;
            }
            ++i;
        }
        const double lower = i < order.size() ? scores[order[i]] : (s > 0.0 ? 0.0 : -1.0);
        double threshold = lower + (s - lower) / 2.0;
        if (!(threshold > lower && threshold < s)) threshold = lower;
        cuts.push_back({s, threshold, running});
    }
    return cuts;
}

std::optional<double> step_ap(const std::vector<Cut>& cuts) {
    if (cuts.empty()) return std::nullopt;
    const auto positives = cuts.back().counts.tp + cuts.back().counts.fn;
    if (positives == 0) return std::nullopt;
    double ap = 0.0;
    std::uint64_t prev_tp = 0;
    for (const auto& cut : cuts) {
        const auto gained = cut.counts.tp - prev_tp;
        if (gained > 0) {
            ap += (static_cast<double>(gained) / static_cast<double>(positives)) * precision(cut.counts);
        }
        prev_tp = cut.counts.tp;
    }
    return ap;
}

}  // namespace

std::optional<double> average_precision(std::span<const double> scores,
                                         std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size()) {
        throw InputError(ErrorKind::length_mismatch, "scores and labels differ in length");
    }
    return step_ap(descending_cuts(scores, labels));
}

PRCurve pr_curve(const EvalSet& es, Task task, std::size_t class_index, const std::vector<double>& grid) {
    if (class_index >= es.class_count(task)) {
        throw InputError(ErrorKind::class_index_out_of_range,
                         "class " + std::to_string(class_index) + " out of range for task " +
                             std::string(to_string(task)) + " (" +
                             std::to_string(es.class_count(task)) + " classes)");
    }
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
    scores.reserve(es.size());
    labels.reserve(es.size());
    for (const auto& rec : es.records()) {
        scores.push_back(rec.scores(task)[class_index]);
        labels.push_back(rec.truth(task)[class_index]);
    }

    const auto cuts = descending_cuts(scores, labels);
    PRCurve curve{task, class_index, 0, {}, step_ap(cuts)};
    curve.positives = cuts.back().counts.tp + cuts.back().counts.fn;

    curve.points.reserve(cuts.size() + grid.size());
    for (const auto& cut : cuts) {
        curve.points.push_back({cut.threshold, precision(cut.counts), recall(cut.counts), false, cut.counts});
    }
    for (double tau : grid) {
        ConfusionCounts c;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] > tau) {
                labels[i] ? ++c.tp : ++c.fp;
            } else {
                labels[i] ? ++c.fn : ++c.tn;
            }
        }
        curve.points.push_back({tau, precision(c), recall(c), true, c});
    }
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const PRPoint& a, const PRPoint& b) { return a.threshold > b.threshold; });
    return curve;
}

std::vector<PRCurve> pr_curves(const EvalSet& es, Task task, const std::vector<double>& grid, int threads) {
    const auto n = static_cast<std::ptrdiff_t>(es.class_count(task));
    std::vector<std::optional<PRCurve>> slots(static_cast<std::size_t>(n));
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        slots[static_cast<std::size_t>(j)] = pr_curve(es, task, static_cast<std::size_t>(j), grid);
    }
    std::vector<PRCurve> curves;
    curves.reserve(slots.size());
    for (auto& slot : slots) curves.push_back(std::move(*slot));
    return curves;
}

std::vector<PRCurve> pr_curves_serial(const EvalSet& es, Task task, const std::vector<double>& grid) {
    std::vector<PRCurve> curves;
    for (std::size_t j = 0; j < es.class_count(task); ++j) curves.push_back(pr_curve(es, task, j, grid));
    return curves;
}

}  // namespace thresh
