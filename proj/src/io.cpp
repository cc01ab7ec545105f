#include "thresh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "thresh/svg.hpp"

namespace thresh {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move '" + tmp.string() + "' into place");
    }
}

std::string sha256_hex(std::string_view content) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(content.data(), content.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw IoError("sha256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string fixed(double value, int decimals) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

namespace {

double round_to(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

InputError parse_error(std::size_t line, const std::string& reason) {
    return InputError(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + reason);
}

}  // namespace

// --- schema ------------------------------------------------------------------

ordered_json schema_to_json(const EvalSchema& schema) {
    auto task = [](const TaskSchema& t) {
        return ordered_json{{"name", t.task_name}, {"classes", t.class_names}};
    };
    return ordered_json{{"action", task(schema.action_task)}, {"reason", task(schema.reason_task)}};
}

EvalSchema schema_from_json(const json& j) {
    auto task = [&](const char* key) {
        if (!j.is_object() || !j.contains(key) || !j.at(key).is_object()) {
            throw InputError(ErrorKind::invalid_schema, std::string("schema lacks task '") + key + "'");
        }
        const auto& t = j.at(key);
        TaskSchema out;
        out.task_name = t.contains("name") ? t.at("name").get<std::string>() : key;
        if (!t.contains("classes") || !t.at("classes").is_array()) {
            throw InputError(ErrorKind::invalid_schema, std::string("task '") + key + "' lacks a classes array");
        }
        out.class_names = t.at("classes").get<std::vector<std::string>>();
        return out;
    };
    try {
        EvalSchema schema{task("action"), task("reason")};
        validate_schema(schema);
        return schema;
    } catch (const json::exception& e) {
        throw InputError(ErrorKind::invalid_schema, std::string("malformed schema: ") + e.what());
    }
}

EvalSchema read_schema(const fs::path& path) {
    const auto text = read_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError(ErrorKind::parse_error, "schema file '" + path.string() + "' is not JSON");
    return schema_from_json(j);
}

// --- predictions ---------------------------------------------------------------

namespace {

std::vector<double> score_array(const json& obj, const char* key, std::size_t expected, std::size_t line) {
    if (!obj.contains(key) || !obj.at(key).is_array()) throw parse_error(line, std::string("missing array '") + key + "'");
    const auto& arr = obj.at(key);
    if (arr.size() != expected) {
        throw parse_error(line, std::string("'") + key + "' has " + std::to_string(arr.size()) +
                                    " entries, schema expects " + std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw parse_error(line, std::string("'") + key + "' holds a non-number");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::uint8_t> label_array(const json& obj, const char* key, std::size_t expected, std::size_t line) {
    if (!obj.contains(key) || !obj.at(key).is_array()) throw parse_error(line, std::string("missing array '") + key + "'");
    const auto& arr = obj.at(key);
    if (arr.size() != expected) {
        throw parse_error(line, std::string("'") + key + "' has " + std::to_string(arr.size()) +
                                    " entries, schema expects " + std::to_string(expected));
    }
    std::vector<std::uint8_t> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        const bool binary = v.is_number() && (v.get<double>() == 0.0 || v.get<double>() == 1.0);
        if (!binary) throw parse_error(line, std::string("'") + key + "' entries must be 0 or 1");
        out.push_back(v.get<double>() == 1.0 ? 1 : 0);
    }
    return out;
}

const std::set<std::string>& record_keys() {
    static const std::set<std::string> keys = {"id", "action_scores", "reason_scores", "action_labels",
                                               "reason_labels"};
    return keys;
}

}  // namespace

EvalSet parse_predictions(std::string_view text, const std::optional<EvalSchema>& schema_arg) {
    std::optional<EvalSchema> schema = schema_arg;
    std::vector<std::pair<std::size_t, json>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) throw parse_error(line_no, "not valid JSON");
        if (!obj.is_object()) throw parse_error(line_no, "expected a JSON object");
        if (lines.empty() && obj.size() == 1 && obj.contains("schema")) {
            if (!schema) schema = schema_from_json(obj.at("schema"));
            continue;
        }
        lines.emplace_back(line_no, std::move(obj));
    }
    if (lines.empty()) {
        throw ValidationError({{ErrorKind::empty_set, "", "", "predictions file has no records"}});
    }
    if (!schema) {
        throw InputError(ErrorKind::schema_missing,
                         "predictions carry no schema header and no schema file was given");
    }

    std::vector<PredictionRecord> records;
    records.reserve(lines.size());
    const auto na = schema->action_task.size();
    const auto nr = schema->reason_task.size();
    for (const auto& [no, obj] : lines) {
        for (const auto& [key, _] : obj.items()) {
            if (!record_keys().count(key)) throw parse_error(no, "unknown field '" + key + "'");
        }
        PredictionRecord rec;
        if (!obj.contains("id")) throw parse_error(no, "missing 'id'");
        const auto& id = obj.at("id");
        if (id.is_string()) {
            rec.id = id.get<std::string>();
        } else if (id.is_number_integer()) {
            rec.id = id.dump();
        } else {
            throw parse_error(no, "'id' must be a string or integer");
        }
        rec.action_scores = score_array(obj, "action_scores", na, no);
        rec.reason_scores = score_array(obj, "reason_scores", nr, no);
        rec.action_truth = label_array(obj, "action_labels", na, no);
        rec.reason_truth = label_array(obj, "reason_labels", nr, no);
        records.push_back(std::move(rec));
    }
    return validate_evalset(std::move(records), std::move(*schema));
}

EvalSet read_predictions(const fs::path& path, const std::optional<fs::path>& schema_path) {
    std::optional<EvalSchema> schema;
    if (schema_path) schema = read_schema(*schema_path);
    return parse_predictions(read_file(path), schema);
}

std::string format_predictions(const EvalSet& es) {
    std::string out = ordered_json{{"schema", schema_to_json(es.schema())}}.dump();
    out.push_back('\n');
    for (const auto& rec : es.records()) {
        ordered_json line;
        line["id"] = rec.id;
        line["action_scores"] = rec.action_scores;
        line["reason_scores"] = rec.reason_scores;
        auto labels = [](const std::vector<std::uint8_t>& v) {
            std::vector<int> ints(v.begin(), v.end());
            return ints;
        };
        line["action_labels"] = labels(rec.action_truth);
        line["reason_labels"] = labels(rec.reason_truth);
        out += line.dump();
        out.push_back('\n');
    }
    return out;
}

// --- object counts ---------------------------------------------------------------

std::vector<ObjectCounts> parse_object_counts(std::string_view text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw InputError(ErrorKind::parse_error, "counts file is not valid JSON");
    if (!doc.is_array()) throw InputError(ErrorKind::parse_error, "counts file must hold a JSON array");

    static const std::set<std::string> allowed = {"dataset", "images", "pedestrians", "riders", "vehicles",
                                                  "total_objects"};
    std::vector<ObjectCounts> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        const std::string where = "counts entry " + std::to_string(i);
        if (!entry.is_object()) throw InputError(ErrorKind::parse_error, where + " is not an object");
        for (const auto& [key, _] : entry.items()) {
            if (!allowed.count(key)) throw InputError(ErrorKind::parse_error, where + ": unknown field '" + key + "'");
        }
        auto count = [&](const char* key) -> std::uint64_t {
            if (!entry.contains(key)) throw InputError(ErrorKind::parse_error, where + ": missing '" + key + "'");
            const auto& v = entry.at(key);
            if (!v.is_number_integer()) throw InputError(ErrorKind::parse_error, where + ": '" + key + "' must be an integer");
            if (v.get<std::int64_t>() < 0) throw InputError(ErrorKind::parse_error, where + ": '" + key + "' is negative");
            return v.get<std::uint64_t>();
        };
        ObjectCounts c;
        if (!entry.contains("dataset") || !entry.at("dataset").is_string()) {
            throw InputError(ErrorKind::parse_error, where + ": missing 'dataset' name");
        }
        c.dataset_name = entry.at("dataset").get<std::string>();
        c.images = count("images");
        c.pedestrians = count("pedestrians");
        c.riders = count("riders");
        c.vehicles = count("vehicles");
        if (entry.contains("total_objects") && count("total_objects") != c.pedestrians + c.riders + c.vehicles) {
            throw InputError(ErrorKind::parse_error, where + ": total_objects does not equal the per-type sum");
        }
        if (c.images == 0) {
            throw InputError(ErrorKind::zero_images, "dataset '" + c.dataset_name + "' reports zero images");
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ObjectCounts> read_object_counts(const fs::path& path) {
    return parse_object_counts(read_file(path));
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    throw InputError(ErrorKind::invalid_config, "format must be 'csv' or 'json'");
}

// --- tables ----------------------------------------------------------------------

std::string landscape_csv(const MetricLandscape& ls) {
    std::string out = "metric";
    for (double t : ls.grid) out += "," + fixed(t, 2);
    out += "\n";
    for (Metric m : kMetrics) {
        out += metric_name(m);
        for (double v : ls.profile(m)) out += "," + fixed(100.0 * v, 2);
        out += "\n";
    }
    return out;
}

std::string landscape_matrix_csv(const MetricLandscape& ls) {
    std::string out = "tau_action,tau_reason";
    for (Metric m : kMetrics) out += "," + std::string(metric_name(m));
    out += "\n";
    for (std::size_t a = 0; a < ls.size(); ++a) {
        for (std::size_t r = 0; r < ls.size(); ++r) {
            const auto& cell = ls.at(a, r);
            out += fixed(ls.grid[a], 2) + "," + fixed(ls.grid[r], 2);
            for (Metric m : kMetrics) out += "," + fixed(100.0 * cell.value(m), 2);
            out += "\n";
        }
    }
    return out;
}

std::string robust_region_csv(const MetricLandscape& ls, const RobustRegion& region) {
    std::string out = "threshold";
    for (Metric m : kMetrics) out += "," + std::string(metric_name(m));
    out += "\n";
    for (std::size_t k : region.indices) {
        out += fixed(ls.grid[k], 2);
        for (Metric m : kMetrics) out += "," + fixed(100.0 * ls.profile(m)[k], 2);
        out += "\n";
    }
    return out;
}

std::string pr_curve_csv(const PRCurve& curve) {
    const std::string ap = curve.average_precision ? fixed(*curve.average_precision, 6) : "";
    std::string out = "threshold,precision,recall,marker,average_precision\n";
    for (const auto& p : curve.points) {
        out += fixed(p.threshold, 6) + "," + fixed(p.precision, 6) + "," + fixed(p.recall, 6) + "," +
               (p.is_grid_marker ? "1" : "0") + "," + ap + "\n";
    }
    return out;
}

std::string densities_csv(const std::vector<std::pair<std::string, DensityReport>>& reports) {
    std::string out = "dataset,pedestrian_density,rider_density,vehicle_density,total_density,complexity\n";
    for (const auto& [name, r] : reports) {
        out += name + "," + fixed(r.d_pedestrian, 4) + "," + fixed(r.d_rider, 4) + "," + fixed(r.d_vehicle, 4) +
               "," + fixed(r.total_density, 4) + "," + fixed(r.complexity, 4) + "\n";
    }
    return out;
}

namespace {

std::string ratio_cell(const Ratio& r) {
    if (r.undefined) return "n/a";
    if (!r.value) return "inf";
    return fixed(*r.value, 1);
}

ordered_json ratio_json(const Ratio& r) {
    if (r.undefined) return "n/a";
    if (!r.value) return "inf";
    return round_to(*r.value, 1);
}

}  // namespace

std::string comparison_csv(const ComparisonTable& table) {
    std::string out = "dataset,baseline,pedestrian_ratio,rider_ratio,vehicle_ratio,total_ratio,complexity_ratio\n";
    for (const auto& row : table.rows) {
        out += row.dataset + "," + table.baseline + "," + ratio_cell(row.pedestrian) + "," + ratio_cell(row.rider) +
               "," + ratio_cell(row.vehicle) + "," + ratio_cell(row.total) + "," + ratio_cell(row.complexity) + "\n";
    }
    return out;
}

std::string distribution_csv(const DistributionTable& table) {
    std::string out = std::string(to_string(table.task)) + "_category,count,percent\n";
    for (std::size_t j = 0; j < table.class_names.size(); ++j) {
        std::string name = table.class_names[j];
        if (name.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char ch : name) {
                if (ch == '"') quoted += '"';
                quoted += ch;
            }
            name = quoted + "\"";
        }
        out += name + "," + std::to_string(table.counts[j]) + "," + fixed(table.percent[j], 2) + "\n";
    }
    return out;
}

namespace {

ordered_json region_json(const RobustRegion& region) {
    ordered_json excluded = ordered_json::array();
    for (const auto& ex : region.excluded) {
        ordered_json failed = ordered_json::array();
        for (Metric m : ex.failed) failed.push_back(metric_name(m));
        excluded.push_back({{"threshold", ex.threshold}, {"failed", failed}});
    }
    return {{"rel_tol", region.rel_tol},
            {"thresholds", region.thresholds},
            {"contiguous", region.contiguous},
            {"excluded", excluded}};
}

}  // namespace

ordered_json peaks_json(const MetricLandscape& ls, const PeakReport& peaks,
                        const std::optional<RobustRegion>& robust,
                        const std::optional<RobustRegion>& robust_check) {
    ordered_json out;
    out["provenance"] = to_string(ls.provenance);
    out["grid"] = ls.grid;
    out["evaluations"] = ls.evaluations;
    out["units"] = "percent";
    ordered_json p = ordered_json::object();
    for (const auto& peak : peaks.peaks) {
        p[std::string(metric_name(peak.metric))] = {{"threshold", peak.threshold},
                                                    {"value", round_to(100.0 * peak.value, 2)},
                                                    {"degradation", round_to(100.0 * peak.degradation, 2)}};
    }
    out["peaks"] = p;
    if (robust) out["robust_region"] = region_json(*robust);
    if (robust_check) out["robust_region_check"] = region_json(*robust_check);
    return out;
}

namespace {

ordered_json landscape_json(const MetricLandscape& ls) {
    ordered_json cells = ordered_json::array();
    for (std::size_t a = 0; a < ls.size(); ++a) {
        for (std::size_t r = 0; r < ls.size(); ++r) {
            ordered_json cell{{"tau_action", ls.grid[a]}, {"tau_reason", ls.grid[r]}};
            for (Metric m : kMetrics) cell[std::string(metric_name(m))] = round_to(100.0 * ls.at(a, r).value(m), 2);
            cells.push_back(cell);
        }
    }
    ordered_json profiles = ordered_json::object();
    for (Metric m : kMetrics) {
        std::vector<double> pct;
        for (double v : ls.profile(m)) pct.push_back(round_to(100.0 * v, 2));
        profiles[std::string(metric_name(m))] = pct;
    }
    return {{"provenance", to_string(ls.provenance)},
            {"units", "percent"},
            {"grid", ls.grid},
            {"evaluations", ls.evaluations},
            {"profiles", profiles},
            {"cells", cells}};
}

ordered_json region_table_json(const MetricLandscape& ls, const RobustRegion& region) {
    ordered_json rows = ordered_json::array();
    for (std::size_t k : region.indices) {
        ordered_json row{{"threshold", ls.grid[k]}};
        for (Metric m : kMetrics) row[std::string(metric_name(m))] = round_to(100.0 * ls.profile(m)[k], 2);
        rows.push_back(row);
    }
    return {{"rel_tol", region.rel_tol}, {"units", "percent"}, {"rows", rows}};
}

ordered_json pr_json(const PRCurve& curve) {
    ordered_json points = ordered_json::array();
    for (const auto& p : curve.points) {
        points.push_back({{"threshold", round_to(p.threshold, 6)},
                          {"precision", round_to(p.precision, 6)},
                          {"recall", round_to(p.recall, 6)},
                          {"marker", p.is_grid_marker}});
    }
    ordered_json out{{"task", to_string(curve.task)}, {"class_index", curve.class_index}, {"positives", curve.positives}};
    out["average_precision"] = curve.average_precision ? ordered_json(round_to(*curve.average_precision, 6)) : ordered_json();
    out["points"] = points;
    return out;
}

ordered_json densities_json(const std::vector<std::pair<std::string, DensityReport>>& reports) {
    ordered_json rows = ordered_json::array();
    for (const auto& [name, r] : reports) {
        rows.push_back({{"dataset", name},
                        {"pedestrian_density", round_to(r.d_pedestrian, 4)},
                        {"rider_density", round_to(r.d_rider, 4)},
                        {"vehicle_density", round_to(r.d_vehicle, 4)},
                        {"total_density", round_to(r.total_density, 4)},
                        {"complexity", round_to(r.complexity, 4)}});
    }
    return rows;
}

ordered_json comparison_json(const ComparisonTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"dataset", row.dataset},
                        {"pedestrian_ratio", ratio_json(row.pedestrian)},
                        {"rider_ratio", ratio_json(row.rider)},
                        {"vehicle_ratio", ratio_json(row.vehicle)},
                        {"total_ratio", ratio_json(row.total)},
                        {"complexity_ratio", ratio_json(row.complexity)}});
    }
    return {{"baseline", table.baseline}, {"rows", rows}};
}

ordered_json distribution_json(const DistributionTable& table) {
    ordered_json rows = ordered_json::array();
    for (std::size_t j = 0; j < table.class_names.size(); ++j) {
        rows.push_back({{"category", table.class_names[j]},
                        {"count", table.counts[j]},
                        {"percent", round_to(table.percent[j], 2)}});
    }
    return {{"task", to_string(table.task)}, {"records", table.records}, {"denominator", "all records"}, {"rows", rows}};
}

}  // namespace

std::vector<ManifestEntry> write_reports(const ReportBundle& bundle, const fs::path& out_dir, ReportFormat format) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create output directory '" + out_dir.string() + "'");

    std::vector<ManifestEntry> manifest;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file_atomic(out_dir / name, content);
        manifest.push_back({name, sha256_hex(content), content.size()});
    };
    auto emit_json = [&](const std::string& name, const ordered_json& j) { emit(name, j.dump(2) + "\n"); };
    const bool csv = format == ReportFormat::csv;

    ordered_json sections = ordered_json::object();
    auto mark = [&](const char* section, bool present) { sections[section] = present ? "written" : "skipped"; };

    if (bundle.landscape) {
        const auto& ls = *bundle.landscape;
        if (csv) {
            emit("landscape.csv", landscape_csv(ls));
            emit("landscape_matrix.csv", landscape_matrix_csv(ls));
        } else {
            emit_json("landscape.json", landscape_json(ls));
        }
        emit("landscape.svg", render_landscape_svg(ls));
        if (bundle.peaks) emit_json("peaks.json", peaks_json(ls, *bundle.peaks, bundle.robust, bundle.robust_check));
        if (bundle.robust) {
            if (csv) {
                emit("robust_region.csv", robust_region_csv(ls, *bundle.robust));
            } else {
                emit_json("robust_region.json", region_table_json(ls, *bundle.robust));
            }
        }
    }
    mark("landscape", bundle.landscape.has_value());
    mark("peaks", bundle.landscape && bundle.peaks);
    mark("robust_region", bundle.landscape && bundle.robust);

    for (Task task : {Task::action, Task::reason}) {
        std::vector<PRCurve> of_task;
        for (const auto& curve : bundle.pr_curves) {
            if (curve.task == task) of_task.push_back(curve);
        }
        if (of_task.empty()) continue;
        for (const auto& curve : of_task) {
            const std::string stem = "pr_" + std::string(to_string(task)) + "_" + std::to_string(curve.class_index);
            if (csv) {
                emit(stem + ".csv", pr_curve_csv(curve));
            } else {
                emit_json(stem + ".json", pr_json(curve));
            }
        }
        emit("pr_" + std::string(to_string(task)) + ".svg",
             render_pr_svg(of_task, bundle.schema ? &*bundle.schema : nullptr));
    }
    mark("pr_curves", !bundle.pr_curves.empty());

    if (!bundle.densities.empty()) {
        if (csv) {
            emit("densities.csv", densities_csv(bundle.densities));
        } else {
            emit_json("densities.json", densities_json(bundle.densities));
        }
    }
    mark("densities", !bundle.densities.empty());
    if (bundle.comparison) {
        if (csv) {
            emit("comparison.csv", comparison_csv(*bundle.comparison));
        } else {
            emit_json("comparison.json", comparison_json(*bundle.comparison));
        }
    }
    mark("comparison", bundle.comparison.has_value());

    for (const auto& table : bundle.distributions) {
        const std::string stem = "distribution_" + std::string(to_string(table.task));
        if (csv) {
            emit(stem + ".csv", distribution_csv(table));
        } else {
            emit_json(stem + ".json", distribution_json(table));
        }
    }
    mark("distribution", !bundle.distributions.empty());

    ordered_json doc;
    doc["tool"] = "threshtool";
    doc["command"] = bundle.metadata.command;
    doc["format"] = csv ? "csv" : "json";
    doc["config"] = bundle.metadata.config;
    ordered_json inputs = ordered_json::array();
    for (const auto& in : bundle.metadata.inputs) inputs.push_back({{"name", in.name}, {"sha256", in.sha256}});
    doc["inputs"] = inputs;
    doc["sections"] = sections;
    ordered_json files = ordered_json::array();
    for (const auto& entry : manifest) {
        files.push_back({{"file", entry.file}, {"sha256", entry.sha256}, {"bytes", entry.bytes}});
    }
    doc["files"] = files;
    write_file_atomic(out_dir / "manifest.json", doc.dump(2) + "\n");
    return manifest;
}

}  // namespace thresh
