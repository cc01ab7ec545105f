#pragma once

// Shared data model: task schemas, prediction records, validated evaluation
// sets, threshold pairs and confusion counts.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thresh {

enum class Task { action, reason };

std::string_view to_string(Task task);
Task parse_task(std::string_view text);

/// Error category shared by every input-facing failure. The CLI maps all of
/// these to exit code 2.
enum class ErrorKind {
    length_mismatch,
    score_out_of_range,
    label_not_binary,
    duplicate_id,
    empty_set,
    invalid_schema,
    parse_error,
    schema_missing,
    zero_images,
    negative_density,
    malformed_table,
    grid_mismatch,
    class_index_out_of_range,
    invalid_config,
};

std::string_view to_string(ErrorKind kind);

class InputError : public std::runtime_error {
public:
    InputError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// One violation found while validating an evaluation set.
struct Issue {
    ErrorKind kind;
    std::string record_id;  // empty for set-level issues
    std::string field;
    std::string detail;
};

/// Raised by validate_evalset; lists every violating record and field.
/// kind() is the kind of the first issue.
class ValidationError : public InputError {
public:
    explicit ValidationError(std::vector<Issue> issues);

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

struct TaskSchema {
    std::string task_name;
    std::vector<std::string> class_names;

    std::size_t size() const noexcept { return class_names.size(); }
    bool operator==(const TaskSchema&) const = default;
};

struct EvalSchema {
    TaskSchema action_task;
    TaskSchema reason_task;

    const TaskSchema& task(Task t) const noexcept {
        return t == Task::action ? action_task : reason_task;
    }
    bool operator==(const EvalSchema&) const = default;
};

/// Throws InputError(invalid_schema) if a task has no classes, duplicate or
/// empty class names, or both tasks share a name.
void validate_schema(const EvalSchema& schema);

/// 4 action and 21 reason classes of the driving action/reason benchmark.
EvalSchema default_schema();

struct PredictionRecord {
    std::string id;
    std::vector<double> action_scores;
    std::vector<double> reason_scores;
    std::vector<std::uint8_t> action_truth;
    std::vector<std::uint8_t> reason_truth;

    const std::vector<double>& scores(Task t) const noexcept {
        return t == Task::action ? action_scores : reason_scores;
    }
    const std::vector<std::uint8_t>& truth(Task t) const noexcept {
        return t == Task::action ? action_truth : reason_truth;
    }
    bool operator==(const PredictionRecord&) const = default;
};

/// A validated, immutable evaluation set. Only validate_evalset constructs one.
class EvalSet {
public:
    const EvalSchema& schema() const noexcept { return schema_; }
    const std::vector<PredictionRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    std::size_t class_count(Task t) const noexcept { return schema_.task(t).size(); }

    bool operator==(const EvalSet&) const = default;

private:
    friend EvalSet validate_evalset(std::vector<PredictionRecord>, EvalSchema);
    EvalSet(EvalSchema schema, std::vector<PredictionRecord> records)
        : schema_(std::move(schema)), records_(std::move(records)) {}

    EvalSchema schema_;
    std::vector<PredictionRecord> records_;
};

/// Checks every record against the schema and returns the set, or throws
/// ValidationError naming every violating record id and field. Scores must be
/// finite and in [0,1] (endpoints allowed); truth entries must be 0 or 1.
EvalSet validate_evalset(std::vector<PredictionRecord> raw_records, EvalSchema schema);

struct ThresholdPair {
    double tau_action;
    double tau_reason;

    ThresholdPair(double action, double reason);
};

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
    std::uint64_t predicted_positive() const noexcept { return tp + fp; }
    bool operator==(const ConfusionCounts&) const = default;
};

}  // namespace thresh
