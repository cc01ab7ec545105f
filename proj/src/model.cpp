#include "thresh/model.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

namespace thresh {

std::string_view to_string(Task task) {
    return task == Task::action ? "action" : "reason";
}

Task parse_task(std::string_view text) {
    if (text == "action") return Task::action;
    if (text == "reason") return Task::reason;
    throw InputError(ErrorKind::invalid_config, "unknown task '" + std::string(text) + "'");
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::length_mismatch: return "LengthMismatch";
        case ErrorKind::score_out_of_range: return "ScoreOutOfRange";
        case ErrorKind::label_not_binary: return "LabelNotBinary";
        case ErrorKind::duplicate_id: return "DuplicateId";
        case ErrorKind::empty_set: return "EmptySet";
        case ErrorKind::invalid_schema: return "InvalidSchema";
        case ErrorKind::parse_error: return "ParseError";
        case ErrorKind::schema_missing: return "SchemaMissing";
        case ErrorKind::zero_images: return "ZeroImages";
        case ErrorKind::negative_density: return "NegativeDensity";
        case ErrorKind::malformed_table: return "MalformedTable";
        case ErrorKind::grid_mismatch: return "GridMismatch";
        case ErrorKind::class_index_out_of_range: return "ClassIndexOutOfRange";
        case ErrorKind::invalid_config: return "InvalidConfig";
    }
    return "Unknown";
}

namespace {

std::string describe(const std::vector<Issue>& issues) {
    std::ostringstream out;
    out << issues.size() << " validation issue" << (issues.size() == 1 ? "" : "s");
    for (const auto& issue : issues) {
        out << "\n  " << to_string(issue.kind);
        if (!issue.record_id.empty()) out << " [" << issue.record_id << "]";
        if (!issue.field.empty()) out << " " << issue.field;
        if (!issue.detail.empty()) out << ": " << issue.detail;
    }
    return out.str();
}

void check_task(const TaskSchema& task) {
    if (task.task_name.empty()) {
        throw InputError(ErrorKind::invalid_schema, "task name must not be empty");
    }
    if (task.class_names.empty()) {
        throw InputError(ErrorKind::invalid_schema,
                         "task '" + task.task_name + "' has no classes");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : task.class_names) {
        if (name.empty()) {
            throw InputError(ErrorKind::invalid_schema,
                             "task '" + task.task_name + "' has an empty class name");
        }
        if (!seen.insert(name).second) {
            throw InputError(ErrorKind::invalid_schema,
                             "task '" + task.task_name + "' repeats class '" + name + "'");
        }
    }
}

void check_scores(const PredictionRecord& rec, const char* field,
                  const std::vector<double>& scores, std::size_t expected,
                  std::vector<Issue>& issues) {
    if (scores.size() != expected) {
        issues.push_back({ErrorKind::length_mismatch, rec.id, field,
                          "expected " + std::to_string(expected) + " entries, got " +
                              std::to_string(scores.size())});
        return;
    }
    for (std::size_t j = 0; j < scores.size(); ++j) {
        const double s = scores[j];
        if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
            std::ostringstream detail;
            detail << "entry " << j << " = " << s << " not in [0,1]";
            issues.push_back({ErrorKind::score_out_of_range, rec.id, field, detail.str()});
        }
    }
}

void check_truth(const PredictionRecord& rec, const char* field,
                 const std::vector<std::uint8_t>& truth, std::size_t expected,
                 std::vector<Issue>& issues) {
    if (truth.size() != expected) {
        issues.push_back({ErrorKind::length_mismatch, rec.id, field,
                          "expected " + std::to_string(expected) + " entries, got " +
                              std::to_string(truth.size())});
        return;
    }
    for (std::size_t j = 0; j < truth.size(); ++j) {
        if (truth[j] > 1) {
            issues.push_back({ErrorKind::label_not_binary, rec.id, field,
                              "entry " + std::to_string(j) + " is not 0 or 1"});
        }
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : InputError(issues.empty() ? ErrorKind::empty_set : issues.front().kind, describe(issues)),
      issues_(std::move(issues)) {}

void validate_schema(const EvalSchema& schema) {
    check_task(schema.action_task);
    check_task(schema.reason_task);
    if (schema.action_task.task_name == schema.reason_task.task_name) {
        throw InputError(ErrorKind::invalid_schema, "action and reason tasks share a name");
    }
}

EvalSchema default_schema() {
    return EvalSchema{
        TaskSchema{"action",
                   {"Move forward", "Stop/Slow down", "Turn left", "Turn right"}},
        TaskSchema{"reason",
                   {"Follow traffic",
                    "Road is clear",
                    "Traffic light is green",
                    "Obstacle: car",
                    "Obstacle: person/pedestrian",
                    "Obstacle: rider",
                    "Obstacle: others",
                    "Traffic light",
                    "Traffic sign",
                    "Front car turning left",
                    "On the left-turn lane",
                    "Traffic light allows left turn",
                    "Front car turning right",
                    "On the right-turn lane",
                    "Traffic light allows right turn",
                    "Obstacles on the left lane",
                    "No lane on the left",
                    "Solid line on the left",
                    "Obstacles on the right lane",
                    "No lane on the right",
                    "Solid line on the right"}},
    };
}

EvalSet validate_evalset(std::vector<PredictionRecord> raw_records, EvalSchema schema) {
    validate_schema(schema);
    std::vector<Issue> issues;
    if (raw_records.empty()) {
        issues.push_back({ErrorKind::empty_set, "", "", "evaluation set has no records"});
        throw ValidationError(std::move(issues));
    }

    const std::size_t n_action = schema.action_task.size();
    const std::size_t n_reason = schema.reason_task.size();
    std::unordered_set<std::string> ids;
    ids.reserve(raw_records.size());
    for (const auto& rec : raw_records) {
        if (rec.id.empty()) {
            issues.push_back({ErrorKind::parse_error, rec.id, "id", "record id is empty"});
        } else if (!ids.insert(rec.id).second) {
            issues.push_back({ErrorKind::duplicate_id, rec.id, "id", "id appears more than once"});
        }
        check_scores(rec, "action_scores", rec.action_scores, n_action, issues);
        check_scores(rec, "reason_scores", rec.reason_scores, n_reason, issues);
        check_truth(rec, "action_truth", rec.action_truth, n_action, issues);
        check_truth(rec, "reason_truth", rec.reason_truth, n_reason, issues);
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return EvalSet(std::move(schema), std::move(raw_records));
}

ThresholdPair::ThresholdPair(double action, double reason)
    : tau_action(action), tau_reason(reason) {
    auto in_unit = [](double t) { return std::isfinite(t) && t >= 0.0 && t <= 1.0; };
    if (!in_unit(action) || !in_unit(reason)) {
        throw InputError(ErrorKind::invalid_config, "thresholds must lie in [0,1]");
    }
}

}  // namespace thresh
