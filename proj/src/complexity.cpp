#include "thresh/complexity.hpp"

#include <cmath>

namespace thresh {

double complexity_score(double d_pedestrian, double d_rider, double d_vehicle,
                        const ComplexityWeights& weights) {
    if (!(d_pedestrian >= 0.0) || !(d_rider >= 0.0) || !(d_vehicle >= 0.0)) {
        throw InputError(ErrorKind::negative_density, "densities must be non-negative");
    }
    return weights.pedestrian * d_pedestrian + weights.rider * d_rider + weights.vehicle * d_vehicle;
}

DensityReport densities(const ObjectCounts& counts, const ComplexityWeights& weights) {
    if (counts.images == 0) {
        throw InputError(ErrorKind::zero_images,
                         "dataset '" + counts.dataset_name + "' reports zero images");
    }
    const auto images = static_cast<double>(counts.images);
    DensityReport r;
    r.d_pedestrian = static_cast<double>(counts.pedestrians) / images;
    r.d_rider = static_cast<double>(counts.riders) / images;
    r.d_vehicle = static_cast<double>(counts.vehicles) / images;
    r.total_density = r.d_pedestrian + r.d_rider + r.d_vehicle;
    r.complexity = complexity_score(r.d_pedestrian, r.d_rider, r.d_vehicle, weights);
    return r;
}

DistributionTable class_distribution(const EvalSet& es, Task task) {
    DistributionTable table;
    table.task = task;
    table.class_names = es.schema().task(task).class_names;
    table.records = es.size();
    table.counts.assign(es.class_count(task), 0);
    for (const auto& rec : es.records()) {
        const auto& truth = rec.truth(task);
        for (std::size_t j = 0; j < truth.size(); ++j) table.counts[j] += truth[j];
    }
    for (auto c : table.counts) {
        table.percent.push_back(100.0 * static_cast<double>(c) / static_cast<double>(es.size()));
    }
    return table;
}

Ratio ratio(double numerator, double baseline) {
    if (baseline == 0.0) return Ratio{std::nullopt, numerator == 0.0};
    return Ratio{numerator / baseline, false};
}

ComparisonTable compare_datasets(const std::vector<std::pair<std::string, DensityReport>>& reports,
                                 const std::string& baseline) {
    if (reports.size() < 2) {
        throw InputError(ErrorKind::invalid_config, "comparison needs at least two datasets");
    }
    const DensityReport* base = nullptr;
    for (const auto& [name, report] : reports) {
        if (name == baseline) base = &report;
    }
    if (base == nullptr) {
        throw InputError(ErrorKind::invalid_config, "baseline dataset '" + baseline + "' not found");
    }
    ComparisonTable table{baseline, {}};
    for (const auto& [name, r] : reports) {
        if (name == baseline) continue;
        table.rows.push_back({name, ratio(r.d_pedestrian, base->d_pedestrian),
                              ratio(r.d_rider, base->d_rider), ratio(r.d_vehicle, base->d_vehicle),
                              ratio(r.total_density, base->total_density),
                              ratio(r.complexity, base->complexity)});
    }
    return table;
}

}  // namespace thresh
