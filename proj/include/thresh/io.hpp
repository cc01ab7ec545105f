#pragma once

// File formats in and reports out.
//
// predictions.jsonl: one JSON object per line with keys id, action_scores,
// reason_scores, action_labels, reason_labels. An optional first line
// {"schema": {...}} embeds the schema; otherwise a schema.json is required.
//
// schema.json: {"action": {"name": "action", "classes": [...]},
//               "reason": {"name": "reason", "classes": [...]}}
//
// counts.json: [{"dataset": "...", "images": N, "pedestrians": N,
//                "riders": N, "vehicles": N, "total_objects": N?}, ...]

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "thresh/complexity.hpp"
#include "thresh/model.hpp"
#include "thresh/pr.hpp"
#include "thresh/sweep.hpp"

namespace thresh {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view content);

/// Fixed-point formatting, "%.*f".
std::string fixed(double value, int decimals);

nlohmann::ordered_json schema_to_json(const EvalSchema& schema);
EvalSchema schema_from_json(const nlohmann::json& j);
EvalSchema read_schema(const std::filesystem::path& path);

/// Throws InputError(parse_error) naming the line, InputError(schema_missing),
/// or ValidationError (including EmptySet) from validation.
EvalSet parse_predictions(std::string_view text, const std::optional<EvalSchema>& schema = std::nullopt);
EvalSet read_predictions(const std::filesystem::path& path,
                         const std::optional<std::filesystem::path>& schema_path = std::nullopt);

/// Header line with the embedded schema, then one line per record.
std::string format_predictions(const EvalSet& es);

std::vector<ObjectCounts> parse_object_counts(std::string_view text);
std::vector<ObjectCounts> read_object_counts(const std::filesystem::path& path);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view text);

struct InputDigest {
    std::string name;
    std::string sha256;
};

struct RunMetadata {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<InputDigest> inputs;
};

/// Everything one run produced. Absent sections are recorded as skipped.
struct ReportBundle {
    std::optional<MetricLandscape> landscape;
    std::optional<PeakReport> peaks;
    std::optional<RobustRegion> robust;
    std::optional<RobustRegion> robust_check;  // same analysis at a second tolerance
    std::vector<PRCurve> pr_curves;
    std::optional<EvalSchema> schema;          // class names for PR legends
    std::vector<std::pair<std::string, DensityReport>> densities;
    std::optional<ComparisonTable> comparison;
    std::vector<DistributionTable> distributions;
    RunMetadata metadata;
};

struct ManifestEntry {
    std::string file;
    std::string sha256;
    std::size_t bytes;
};

/// Writes every present section plus manifest.json into out_dir (created if
/// missing) and returns the manifest, manifest.json itself excluded. Output is
/// byte-deterministic for a given bundle. Throws IoError.
std::vector<ManifestEntry> write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                                         ReportFormat format = ReportFormat::csv);

// Individual renderers, exposed for tests.
std::string landscape_csv(const MetricLandscape& ls);
std::string landscape_matrix_csv(const MetricLandscape& ls);
std::string robust_region_csv(const MetricLandscape& ls, const RobustRegion& region);
std::string pr_curve_csv(const PRCurve& curve);
std::string densities_csv(const std::vector<std::pair<std::string, DensityReport>>& reports);
std::string comparison_csv(const ComparisonTable& table);
std::string distribution_csv(const DistributionTable& table);
nlohmann::ordered_json peaks_json(const MetricLandscape& ls, const PeakReport& peaks,
                                  const std::optional<RobustRegion>& robust,
                                  const std::optional<RobustRegion>& robust_check);

}  // namespace thresh
