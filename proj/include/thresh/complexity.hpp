#pragma once

// Object densities, weighted scene complexity, and class-frequency tables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thresh/model.hpp"

namespace thresh {

struct ObjectCounts {
    std::string dataset_name;
    std::uint64_t images = 0;
    std::uint64_t pedestrians = 0;
    std::uint64_t riders = 0;
    std::uint64_t vehicles = 0;

    bool operator==(const ObjectCounts&) const = default;
};

/// Per-object-type weights of the complexity score. Vulnerable road users
/// weigh more than vehicles.
struct ComplexityWeights {
    double pedestrian = 1.5;
    double rider = 1.3;
    double vehicle = 1.0;
};

struct DensityReport {
    double d_pedestrian = 0.0;
    double d_rider = 0.0;
    double d_vehicle = 0.0;
    double total_density = 0.0;
    double complexity = 0.0;
};

/// Objects per image for each type. Throws InputError(zero_images).
DensityReport densities(const ObjectCounts& counts, const ComplexityWeights& weights = {});

/// Weighted sum of densities. Throws InputError(negative_density).
double complexity_score(double d_pedestrian, double d_rider, double d_vehicle,
                        const ComplexityWeights& weights = {});

struct DistributionTable {
    Task task;
    std::vector<std::string> class_names;
    std::vector<std::uint64_t> counts;
    std::vector<double> percent;  // of all records, in [0,100]
    std::size_t records = 0;
};

DistributionTable class_distribution(const EvalSet& es, Task task);

/// A ratio against the baseline; value is empty when the baseline is zero.
struct Ratio {
    std::optional<double> value;
    bool undefined = false;  // 0 / 0
};

struct ComparisonRow {
    std::string dataset;
    Ratio pedestrian;
    Ratio rider;
    Ratio vehicle;
    Ratio total;
    Ratio complexity;
};

struct ComparisonTable {
    std::string baseline;
    std::vector<ComparisonRow> rows;  // one per non-baseline dataset, input order
};

Ratio ratio(double numerator, double baseline);

/// Ratios of every dataset's densities and complexity to the named baseline.
/// Needs at least two reports; throws InputError(invalid_config) otherwise or
/// when the baseline name is unknown.
ComparisonTable compare_datasets(const std::vector<std::pair<std::string, DensityReport>>& reports,
                                 const std::string& baseline);

}  // namespace thresh
