#include "thresh/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include <omp.h>

namespace thresh {

void SweepConfig::validate() const {
    auto fail = [](const std::string& msg) { throw InputError(ErrorKind::invalid_config, msg); };
    if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || !std::isfinite(step)) {
        fail("sweep bounds and step must be finite");
    }
    if (tau_min < 0.0 || tau_max > 1.0 || tau_min > tau_max) {
        fail("sweep bounds must satisfy 0 <= tau_min <= tau_max <= 1");
    }
    if (step <= 0.0) fail("sweep step must be positive");
    if (!(robust_rel_tol >= 0.0)) fail("robust tolerance must be non-negative");
    const double steps = (tau_max - tau_min) / step;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        fail("tau_max - tau_min must be a whole number of steps");
    }
}

std::vector<double> make_grid(const SweepConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(std::llround((cfg.tau_max - cfg.tau_min) / cfg.step)) + 1;
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double raw = cfg.tau_min + static_cast<double>(k) * cfg.step;
        grid[k] = std::clamp(std::round(raw * 1e12) / 1e12, 0.0, 1.0);
    }
    return grid;
}

std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::action_overall: return "f1_action_overall";
        case Metric::action_mean: return "f1_action_mean";
        case Metric::reason_overall: return "f1_reason_overall";
        case Metric::reason_mean: return "f1_reason_mean";
    }
    return "";
}

Task metric_task(Metric m) {
    return (m == Metric::action_overall || m == Metric::action_mean) ? Task::action : Task::reason;
}

Metric parse_metric(std::string_view text) {
    std::string key;
    for (char ch : text) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    if (key.rfind("f1", 0) == 0) key.erase(0, 2);
    for (Metric m : kMetrics) {
        std::string candidate;
        for (char ch : metric_name(m).substr(3)) {
            if (ch != '_') candidate.push_back(ch);
        }
        if (key == candidate) return m;
    }
    throw InputError(ErrorKind::malformed_table, "unknown metric '" + std::string(text) + "'");
}

double CellMetrics::value(Metric m) const noexcept {
    switch (m) {
        case Metric::action_overall: return action_overall;
        case Metric::action_mean: return action_mean;
        case Metric::reason_overall: return reason_overall;
        case Metric::reason_mean: return reason_mean;
    }
    return 0.0;
}

std::string_view to_string(Provenance p) {
    return p == Provenance::computed ? "computed" : "fixture";
}

std::vector<double> MetricLandscape::profile(Metric m) const {
    std::vector<double> out(grid.size());
    const bool action = metric_task(m) == Task::action;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out[k] = action ? at(k, 0).value(m) : at(0, k).value(m);
    }
    return out;
}

namespace {

MetricLandscape broadcast(std::vector<double> grid, const std::vector<TaskMetrics>& action,
                          const std::vector<TaskMetrics>& reason, Provenance provenance) {
    MetricLandscape ls;
    const std::size_t n = grid.size();
    ls.grid = std::move(grid);
    ls.provenance = provenance;
    ls.cells.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t r = 0; r < n; ++r) {
            ls.cells[a * n + r] = CellMetrics{action[a].overall_f1, action[a].mean_f1,
                                              reason[r].overall_f1, reason[r].mean_f1};
        }
    }
    return ls;
}

}  // namespace

MetricLandscape run_sweep(const EvalSet& es, const SweepConfig& cfg, int threads) {
    auto grid = make_grid(cfg);
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<TaskMetrics> action(grid.size());
    std::vector<TaskMetrics> reason(grid.size());
    const int team = threads > 0 ? threads : omp_get_max_threads();

    // Slots 0..n-1 are action thresholds, n..2n-1 reason thresholds.
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (std::ptrdiff_t k = 0; k < 2 * n; ++k) {
        if (k < n) {
            action[k] = task_metrics(es, Task::action, grid[k], cfg.empty_f1);
        } else {
            reason[k - n] = task_metrics(es, Task::reason, grid[k - n], cfg.empty_f1);
        }
    }

    auto ls = broadcast(std::move(grid), action, reason, Provenance::computed);
    ls.evaluations = static_cast<std::size_t>(2 * n);
    return ls;
}

MetricLandscape run_sweep_serial(const EvalSet& es, const SweepConfig& cfg) {
    auto grid = make_grid(cfg);
    std::vector<TaskMetrics> action;
    std::vector<TaskMetrics> reason;
    for (double tau : grid) action.push_back(task_metrics(es, Task::action, tau, cfg.empty_f1));
    for (double tau : grid) reason.push_back(task_metrics(es, Task::reason, tau, cfg.empty_f1));
    auto ls = broadcast(std::move(grid), action, reason, Provenance::computed);
    ls.evaluations = 2 * ls.grid.size();
    return ls;
}

PeakReport find_peaks(const MetricLandscape& ls) {
    if (ls.grid.empty()) {
        throw InputError(ErrorKind::invalid_config, "cannot find peaks of an empty landscape");
    }
    PeakReport report{};
    for (Metric m : kMetrics) {
        const auto values = ls.profile(m);
        std::size_t best = 0;
        for (std::size_t k = 1; k < values.size(); ++k) {
            if (values[k] > values[best]) best = k;
        }
        report.peaks[static_cast<std::size_t>(m)] =
            Peak{m, best, ls.grid[best], values[best], values[best] - values.back()};
    }
    return report;
}

RobustRegion robust_region(const MetricLandscape& ls, double rel_tol) {
    if (!(rel_tol >= 0.0)) {
        throw InputError(ErrorKind::invalid_config, "robust tolerance must be non-negative");
    }
    const auto peaks = find_peaks(ls);
    std::array<std::vector<double>, 4> profiles;
    for (Metric m : kMetrics) profiles[static_cast<std::size_t>(m)] = ls.profile(m);

    RobustRegion region;
    region.rel_tol = rel_tol;
    for (std::size_t k = 0; k < ls.grid.size(); ++k) {
        std::vector<Metric> failed;
        for (Metric m : kMetrics) {
            const auto i = static_cast<std::size_t>(m);
            if (profiles[i][k] < (1.0 - rel_tol) * peaks.peaks[i].value) failed.push_back(m);
        }
        if (failed.empty()) {
            region.indices.push_back(k);
            region.thresholds.push_back(ls.grid[k]);
        } else {
            region.excluded.push_back({k, ls.grid[k], std::move(failed)});
        }
    }
    for (std::size_t i = 1; i < region.indices.size(); ++i) {
        if (region.indices[i] != region.indices[i - 1] + 1) region.contiguous = false;
    }
    return region;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

double parse_number(std::string_view cell, std::size_t line_no) {
    double value = 0.0;
    const auto* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw InputError(ErrorKind::malformed_table, "line " + std::to_string(line_no) +
                                                          ": '" + std::string(cell) +
                                                          "' is not a number");
    }
    return value;
}

bool is_threshold_header(std::string_view cell) {
    std::string key;
    for (char ch : cell) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return key == "threshold" || key == "tau" || key == "confidence threshold";
}

}  // namespace

FixtureTable parse_fixture_csv(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        if (!trim(line).empty() && trim(line).front() != '#') rows.emplace_back(line_no, split_row(line));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (rows.size() < 2) throw InputError(ErrorKind::malformed_table, "fixture table has no data rows");

    const auto& header = rows.front().second;
    const std::size_t width = header.size();
    for (const auto& [no, cells] : rows) {
        if (cells.size() != width) {
            throw InputError(ErrorKind::malformed_table,
                             "line " + std::to_string(no) + " has " + std::to_string(cells.size()) +
                                 " cells, header has " + std::to_string(width));
        }
    }
    if (width < 2) throw InputError(ErrorKind::malformed_table, "fixture table needs at least two columns");

    FixtureTable table;
    std::array<bool, 4> seen{};
    auto take_metric = [&](std::string_view name) {
        const Metric m = parse_metric(name);
        auto& flag = seen[static_cast<std::size_t>(m)];
        if (flag) throw InputError(ErrorKind::malformed_table, "metric '" + std::string(name) + "' repeated");
        flag = true;
        return static_cast<std::size_t>(m);
    };

    if (is_threshold_header(header.front())) {
        // One row per threshold, one column per metric.
        std::vector<std::size_t> columns;
        for (std::size_t c = 1; c < width; ++c) columns.push_back(take_metric(header[c]));
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& [no, cells] = rows[r];
            table.thresholds.push_back(parse_number(cells[0], no));
            for (std::size_t c = 1; c < width; ++c) {
                table.percent[columns[c - 1]].push_back(parse_number(cells[c], no));
            }
        }
    } else {
        for (std::size_t c = 1; c < width; ++c) table.thresholds.push_back(parse_number(header[c], rows.front().first));
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& [no, cells] = rows[r];
            auto& dst = table.percent[take_metric(cells[0])];
            for (std::size_t c = 1; c < width; ++c) dst.push_back(parse_number(cells[c], no));
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (!seen[i]) {
            throw InputError(ErrorKind::malformed_table,
                             "fixture table lacks metric " + std::string(metric_name(kMetrics[i])));
        }
    }
    if (!std::is_sorted(table.thresholds.begin(), table.thresholds.end()) ||
        std::adjacent_find(table.thresholds.begin(), table.thresholds.end()) != table.thresholds.end()) {
        throw InputError(ErrorKind::malformed_table, "fixture thresholds must be strictly ascending");
    }
    return table;
}

MetricLandscape load_landscape_fixture(const FixtureTable& table, const std::vector<double>& grid) {
    if (table.thresholds.size() != grid.size()) {
        throw InputError(ErrorKind::grid_mismatch,
                         "fixture has " + std::to_string(table.thresholds.size()) +
                             " thresholds, grid has " + std::to_string(grid.size()));
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (std::abs(table.thresholds[k] - grid[k]) > 1e-9) {
            throw InputError(ErrorKind::grid_mismatch,
                             "fixture threshold " + std::to_string(table.thresholds[k]) +
                                 " does not match grid point " + std::to_string(grid[k]));
        }
    }
    std::vector<TaskMetrics> action(grid.size());
    std::vector<TaskMetrics> reason(grid.size());
    const auto& pct = table.percent;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        action[k].overall_f1 = pct[0].at(k) / 100.0;
        action[k].mean_f1 = pct[1].at(k) / 100.0;
        reason[k].overall_f1 = pct[2].at(k) / 100.0;
        reason[k].mean_f1 = pct[3].at(k) / 100.0;
    }
    return broadcast(grid, action, reason, Provenance::fixture);
}

}  // namespace thresh
