// threshtool: decision-threshold sweeps, PR analysis and dataset complexity
// reports over recorded multi-task classifier scores.
//
// Exit codes: 0 success, 1 internal/IO error, 2 invalid input, 64 usage error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thresh/complexity.hpp"
#include "thresh/io.hpp"
#include "thresh/metrics.hpp"
#include "thresh/pr.hpp"
#include "thresh/sweep.hpp"
#include "thresh/synth.hpp"

namespace fs = std::filesystem;
using namespace thresh;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string predictions;
    std::string schema;
    std::string fixture;
    std::string counts;
    std::string out;
    std::string format = "csv";
    std::string empty_f1 = "one";
    std::string task;
    std::optional<std::size_t> class_index;
    std::vector<double> weights = {1.5, 1.3, 1.0};
    std::string baseline;
    SweepConfig sweep;
    double check_tol = 0.01;
    int threads = 0;
    std::uint64_t seed = 0;
    std::size_t n_records = 100;
    double separability = 0.5;
    double positive_rate = 0.3;
};

struct LoadedInput {
    std::string name;
    std::string text;
};

LoadedInput load(const std::string& path) {
    return {fs::path(path).filename().string(), read_file(path)};
}

void add_digest(RunMetadata& meta, const LoadedInput& in) {
    meta.inputs.push_back({in.name, sha256_hex(in.text)});
}

EvalSet load_predictions(const Options& opt, RunMetadata& meta) {
    const auto preds = load(opt.predictions);
    add_digest(meta, preds);
    std::optional<EvalSchema> schema;
    if (!opt.schema.empty()) {
        const auto schema_in = load(opt.schema);
        add_digest(meta, schema_in);
        schema = schema_from_json(nlohmann::json::parse(schema_in.text));
    }
    return parse_predictions(preds.text, schema);
}

SweepConfig sweep_config(const Options& opt) {
    SweepConfig cfg = opt.sweep;
    cfg.empty_f1 = parse_empty_f1(opt.empty_f1);
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json sweep_config_json(const SweepConfig& cfg, const Options& opt) {
    return {{"tau_min", cfg.tau_min},   {"tau_max", cfg.tau_max},
            {"step", cfg.step},         {"robust_rel_tol", cfg.robust_rel_tol},
            {"check_tol", opt.check_tol}, {"empty_f1", to_string(cfg.empty_f1)}};
}

ComplexityWeights complexity_weights(const Options& opt) {
    if (opt.weights.size() != 3) throw UsageError("--weights takes exactly three values");
    return {opt.weights[0], opt.weights[1], opt.weights[2]};
}

void require(bool present, const char* what) {
    if (!present) throw UsageError(std::string(what) + " is required");
}

std::string pct(double v) { return fixed(100.0 * v, 2); }

std::string region_text(const RobustRegion& region) {
    std::string s = "{";
    for (std::size_t i = 0; i < region.thresholds.size(); ++i) {
        s += (i ? "," : "") + fixed(region.thresholds[i], 2);
    }
    return s + "}";
}

// Sections shared by sweep and report.
std::string fill_landscape(ReportBundle& bundle, const Options& opt, const std::optional<EvalSet>& es) {
    const auto cfg = sweep_config(opt);
    const auto grid = make_grid(cfg);
    MetricLandscape ls;
    if (es) {
        ls = run_sweep(*es, cfg, opt.threads);
    } else {
        const auto fixture = load(opt.fixture);
        add_digest(bundle.metadata, fixture);
        ls = load_landscape_fixture(parse_fixture_csv(fixture.text), grid);
    }
    bundle.peaks = find_peaks(ls);
    bundle.robust = robust_region(ls, cfg.robust_rel_tol);
    bundle.robust_check = robust_region(ls, opt.check_tol);
    bundle.landscape = ls;
    bundle.metadata.config["sweep"] = sweep_config_json(cfg, opt);

    std::ostringstream summary;
    summary << ls.size() << "x" << ls.size() << " landscape (" << to_string(ls.provenance) << ")";
    for (const auto& peak : bundle.peaks->peaks) {
        summary << "; " << metric_name(peak.metric) << " " << pct(peak.value) << "@" << fixed(peak.threshold, 2);
    }
    summary << "; robust region " << region_text(*bundle.robust);
    return summary.str();
}

void check_input_exclusion(const Options& opt) {
    if (!opt.predictions.empty() && !opt.fixture.empty()) {
        throw UsageError("--predictions and --landscape-fixture are mutually exclusive");
    }
}

int run_sweep_cmd(const Options& opt) {
    check_input_exclusion(opt);
    require(!opt.predictions.empty() || !opt.fixture.empty(), "one of --predictions / --landscape-fixture");
    ReportBundle bundle;
    bundle.metadata.command = "sweep";
    std::optional<EvalSet> es;
    if (!opt.predictions.empty()) es = load_predictions(opt, bundle.metadata);
    const auto summary = fill_landscape(bundle, opt, es);
    write_reports(bundle, opt.out, parse_report_format(opt.format));
    std::cout << "sweep: " << summary << "\n";
    return kExitOk;
}

int run_pr_cmd(const Options& opt) {
    ReportBundle bundle;
    bundle.metadata.command = "pr";
    const auto es = load_predictions(opt, bundle.metadata);
    const auto cfg = sweep_config(opt);
    const auto grid = make_grid(cfg);
    const Task task = parse_task(opt.task);
    if (opt.class_index) {
        bundle.pr_curves.push_back(pr_curve(es, task, *opt.class_index, grid));
    } else {
        bundle.pr_curves = pr_curves(es, task, grid, opt.threads);
    }
    bundle.schema = es.schema();
    bundle.metadata.config["task"] = opt.task;
    bundle.metadata.config["class"] = opt.class_index ? nlohmann::ordered_json(*opt.class_index)
                                                      : nlohmann::ordered_json("all");
    bundle.metadata.config["grid"] = grid;
    write_reports(bundle, opt.out, parse_report_format(opt.format));

    std::cout << "pr: " << bundle.pr_curves.size() << " " << opt.task << " curve(s)";
    for (const auto& c : bundle.pr_curves) {
        std::cout << "; class " << c.class_index << " AP="
                  << (c.average_precision ? fixed(*c.average_precision, 4) : std::string("n/a"));
    }
    std::cout << "\n";
    return kExitOk;
}

std::string fill_complexity(ReportBundle& bundle, const Options& opt) {
    const auto weights = complexity_weights(opt);
    const auto input = load(opt.counts);
    add_digest(bundle.metadata, input);
    const auto counts = parse_object_counts(input.text);
    for (const auto& c : counts) bundle.densities.emplace_back(c.dataset_name, densities(c, weights));
    if (bundle.densities.size() >= 2) {
        const std::string baseline = opt.baseline.empty() ? bundle.densities.front().first : opt.baseline;
        bundle.comparison = compare_datasets(bundle.densities, baseline);
    }
    bundle.metadata.config["weights"] = {{"pedestrian", weights.pedestrian},
                                         {"rider", weights.rider},
                                         {"vehicle", weights.vehicle}};
    std::string summary = std::to_string(bundle.densities.size()) + " dataset(s)";
    for (const auto& [name, r] : bundle.densities) summary += "; " + name + " C=" + fixed(r.complexity, 4);
    return summary;
}

int run_complexity_cmd(const Options& opt) {
    ReportBundle bundle;
    bundle.metadata.command = "complexity";
    const auto summary = fill_complexity(bundle, opt);
    write_reports(bundle, opt.out, parse_report_format(opt.format));
    std::cout << "complexity: " << summary << "\n";
    return kExitOk;
}

int run_distribution_cmd(const Options& opt) {
    ReportBundle bundle;
    bundle.metadata.command = "distribution";
    const auto es = load_predictions(opt, bundle.metadata);
    bundle.distributions = {class_distribution(es, Task::action), class_distribution(es, Task::reason)};
    write_reports(bundle, opt.out, parse_report_format(opt.format));
    std::cout << "distribution: " << es.size() << " records, " << es.class_count(Task::action) << " action / "
              << es.class_count(Task::reason) << " reason classes\n";
    return kExitOk;
}

int run_report_cmd(const Options& opt) {
    check_input_exclusion(opt);
    require(!opt.predictions.empty() || !opt.fixture.empty() || !opt.counts.empty(),
            "at least one of --predictions / --landscape-fixture / --counts");
    ReportBundle bundle;
    bundle.metadata.command = "report";
    std::string summary;
    std::optional<EvalSet> es;
    if (!opt.predictions.empty()) es = load_predictions(opt, bundle.metadata);
    if (es || !opt.fixture.empty()) summary += fill_landscape(bundle, opt, es);
    if (es) {
        const auto grid = make_grid(sweep_config(opt));
        for (Task task : {Task::action, Task::reason}) {
            auto curves = pr_curves(*es, task, grid, opt.threads);
            for (auto& c : curves) bundle.pr_curves.push_back(std::move(c));
            bundle.distributions.push_back(class_distribution(*es, task));
        }
        bundle.schema = es->schema();
        summary += "; " + std::to_string(bundle.pr_curves.size()) + " PR curves";
    }
    if (!opt.counts.empty()) summary += (summary.empty() ? "" : "; ") + fill_complexity(bundle, opt);
    const auto manifest = write_reports(bundle, opt.out, parse_report_format(opt.format));
    std::cout << "report: " << summary << "; " << manifest.size() << " files\n";
    return kExitOk;
}

int run_synth_cmd(const Options& opt) {
    EvalSchema schema = opt.schema.empty() ? default_schema() : read_schema(opt.schema);
    const auto spec = SynthSpec::uniform(opt.seed, opt.n_records, opt.separability, opt.positive_rate, schema);
    const auto es = generate(spec);
    const fs::path out(opt.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_file_atomic(out, format_predictions(es));
    std::cout << "synth: " << es.size() << " records (seed " << opt.seed << ", separability "
              << opt.separability << ") -> " << opt.out << "\n";
    return kExitOk;
}

void add_prediction_inputs(CLI::App* cmd, Options& opt, bool required) {
    auto* p = cmd->add_option("--predictions", opt.predictions, "Predictions JSONL file");
    if (required) p->required();
    p->check(CLI::ExistingFile);
    cmd->add_option("--schema", opt.schema, "Schema JSON, when the predictions carry no schema header")
        ->check(CLI::ExistingFile);
}

void add_grid_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tau-min", opt.sweep.tau_min, "Lowest grid threshold (grid 0.1..0.9 gives the 9x9 landscape)")
        ->capture_default_str();
    cmd->add_option("--tau-max", opt.sweep.tau_max, "Highest grid threshold; 1.0 would predict nothing")
        ->capture_default_str();
    cmd->add_option("--step", opt.sweep.step, "Grid step")->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out, "Output directory")->required();
    cmd->add_option("--format", opt.format, "Table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", opt.threads, "Worker threads for parallel kernels (0 = all available)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision-threshold sweeps, precision-recall analysis and dataset complexity reports"};
    app.require_subcommand(1);
    Options opt;

    auto* sweep = app.add_subcommand("sweep", "Evaluate the four F1 metrics over the threshold grid");
    add_prediction_inputs(sweep, opt, false);
    sweep->add_option("--landscape-fixture", opt.fixture, "Percent metric table (metric rows x threshold columns)")
        ->check(CLI::ExistingFile);
    add_grid_options(sweep, opt);
    sweep->add_option("--tol", opt.sweep.robust_rel_tol,
                      "Relative tolerance of the robust region (0.03: smallest two-decimal tolerance that "
                      "yields {0.3,0.4,0.5} on data/bdd_oia_thresholds.csv)")
        ->capture_default_str();
    sweep->add_option("--check-tol", opt.check_tol, "Second tolerance reported alongside (\"within 1%\" reading)")
        ->capture_default_str();
    sweep->add_option("--empty-f1", opt.empty_f1, "F1 when nothing is positive in truth or prediction")
        ->check(CLI::IsMember({"one", "zero"}))
        ->capture_default_str();
    add_output_options(sweep, opt);

    auto* pr = app.add_subcommand("pr", "Per-class precision-recall curves with grid markers and AP");
    add_prediction_inputs(pr, opt, true);
    pr->add_option("--task", opt.task, "action or reason")->required()->check(CLI::IsMember({"action", "reason"}));
    pr->add_option("--class", opt.class_index, "Class index (all classes when omitted)");
    add_grid_options(pr, opt);
    add_output_options(pr, opt);

    auto* complexity = app.add_subcommand("complexity", "Object densities and weighted scene complexity");
    complexity->add_option("--counts", opt.counts, "Object counts JSON")->required()->check(CLI::ExistingFile);
    complexity->add_option("--weights", opt.weights,
                           "Pedestrian, rider, vehicle weights (vulnerable road users weigh more)")
        ->expected(3)
        ->delimiter(',')
        ->capture_default_str();
    complexity->add_option("--baseline", opt.baseline, "Dataset the ratios are taken against (default: first)");
    add_output_options(complexity, opt);

    auto* distribution = app.add_subcommand("distribution", "Per-class positive counts and percentages");
    add_prediction_inputs(distribution, opt, true);
    add_output_options(distribution, opt);

    auto* report = app.add_subcommand("report", "Run every analysis the inputs allow and bundle a manifest");
    add_prediction_inputs(report, opt, false);
    report->add_option("--landscape-fixture", opt.fixture, "Percent metric table, instead of predictions")
        ->check(CLI::ExistingFile);
    report->add_option("--counts", opt.counts, "Object counts JSON")->check(CLI::ExistingFile);
    add_grid_options(report, opt);
    report->add_option("--tol", opt.sweep.robust_rel_tol, "Relative tolerance of the robust region")
        ->capture_default_str();
    report->add_option("--check-tol", opt.check_tol, "Second tolerance reported alongside")->capture_default_str();
    report->add_option("--empty-f1", opt.empty_f1, "F1 when nothing is positive in truth or prediction")
        ->check(CLI::IsMember({"one", "zero"}))
        ->capture_default_str();
    report->add_option("--weights", opt.weights, "Pedestrian, rider, vehicle complexity weights")
        ->expected(3)
        ->delimiter(',')
        ->capture_default_str();
    report->add_option("--baseline", opt.baseline, "Baseline dataset for density ratios");
    add_output_options(report, opt);

    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic predictions JSONL file");
    synth->add_option("--seed", opt.seed, "mt19937_64 seed")->capture_default_str();
    synth->add_option("--n", opt.n_records, "Number of records")->capture_default_str();
    synth->add_option("--separability", opt.separability,
                      "0: scores ignore truth, 1: score equals truth")
        ->capture_default_str();
    synth->add_option("--positive-rate", opt.positive_rate, "Per-class positive rate")->capture_default_str();
    synth->add_option("--schema", opt.schema, "Schema JSON (default: 4 action / 21 reason classes)")
        ->check(CLI::ExistingFile);
    synth->add_option("--out", opt.out, "Output JSONL path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) return run_sweep_cmd(opt);
        if (*pr) return run_pr_cmd(opt);
        if (*complexity) return run_complexity_cmd(opt);
        if (*distribution) return run_distribution_cmd(opt);
        if (*report) return run_report_cmd(opt);
        if (*synth) return run_synth_cmd(opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "invalid input (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input (ParseError): " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
