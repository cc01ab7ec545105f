#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "thresh/io.hpp"
#include "thresh/oracle.hpp"
#include "thresh/sweep.hpp"

using namespace thresh;

namespace {

MetricLandscape reference_landscape() {
    const auto table = parse_fixture_csv(read_file(THRESH_DATA_DIR "/bdd_oia_thresholds.csv"));
    return load_landscape_fixture(table, make_grid({}));
}

double pct2(double v) { return std::round(v * 10000.0) / 100.0; }

MetricLandscape constant_landscape(const std::vector<double>& grid, std::array<std::vector<double>, 4> rows) {
    FixtureTable t{grid, std::move(rows)};
    return load_landscape_fixture(t, grid);
}

void check_cells_equal(const MetricLandscape& a, const MetricLandscape& b) {
    REQUIRE(a.grid == b.grid);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i] == b.cells[i]);
}

}  // namespace

TEST_CASE("default grid is 0.1..0.9 with exact decimal values") {
    const auto g = make_grid({});
    REQUIRE(g.size() == 9);
    for (std::size_t k = 0; k < 9; ++k) CHECK(g[k] == static_cast<double>(k + 1) / 10.0);
}

TEST_CASE("grid validation") {
    SweepConfig single{0.5, 0.5, 0.1};
    CHECK(make_grid(single) == std::vector<double>{0.5});
    CHECK_THROWS_AS(make_grid({0.1, 0.95, 0.1}), InputError);
    CHECK_THROWS_AS(make_grid({0.5, 0.4, 0.1}), InputError);
    CHECK_THROWS_AS(make_grid({0.1, 0.9, 0.0}), InputError);
    CHECK_THROWS_AS(make_grid({-0.1, 0.9, 0.1}), InputError);
    CHECK(make_grid({0.0, 1.0, 0.05}).size() == 21);
}

TEST_CASE("metric names parse in several spellings") {
    CHECK(parse_metric("f1_action_overall") == Metric::action_overall);
    CHECK(parse_metric("F1-reason-mean") == Metric::reason_mean);
    CHECK(parse_metric("action mean") == Metric::action_mean);
    CHECK_THROWS_AS(parse_metric("accuracy"), InputError);
}

TEST_CASE("single-point grid yields one cell and zero degradation") {
    std::mt19937_64 rng(2);
    const auto es = testing::random_evalset(rng, 15, 4);
    const auto ls = run_sweep(es, {0.5, 0.5, 0.1});
    REQUIRE(ls.cells.size() == 1);
    CHECK(ls.evaluations == 2);
    for (const auto& p : find_peaks(ls).peaks) CHECK(p.degradation == 0.0);
}

TEST_CASE("action metrics ignore the reason threshold and vice versa") {
    std::mt19937_64 rng(4);
    const auto es = validate_evalset(testing::random_records(rng, 50, 4, 21, false), default_schema());
    const auto ls = run_sweep(es, {});
    CHECK(ls.evaluations == 18);
    for (std::size_t a = 0; a < 9; ++a) {
        for (std::size_t r = 0; r < 9; ++r) {
            CHECK(ls.at(a, r).action_overall == ls.at(a, 0).action_overall);
            CHECK(ls.at(a, r).action_mean == ls.at(a, 0).action_mean);
            CHECK(ls.at(a, r).reason_overall == ls.at(0, r).reason_overall);
            CHECK(ls.at(a, r).reason_mean == ls.at(0, r).reason_mean);
        }
    }
    check_cells_equal(ls, oracle::naive_sweep(es, {}));
}

TEST_CASE("parallel sweep equals the serial reference for any thread count") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto es = testing::random_evalset(rng, 60, 8, trial % 2 == 0);
        SweepConfig cfg{0.0, 1.0, 0.05};
        const auto serial = run_sweep_serial(es, cfg);
        for (int threads : {1, 2, 4}) CHECK(run_sweep(es, cfg, threads) == serial);
    }
}

TEST_CASE("property: marginal sweep equals naive per-cell evaluation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto es = testing::random_evalset(rng, 20, 6);
        for (EmptyF1 conv : {EmptyF1::one, EmptyF1::zero}) {
            SweepConfig cfg;
            cfg.empty_f1 = conv;
            check_cells_equal(run_sweep(es, cfg), oracle::naive_sweep(es, cfg));
        }
    }
}

TEST_CASE("reference threshold table: peaks and degradations") {
    const auto ls = reference_landscape();
    CHECK(ls.provenance == Provenance::fixture);
    CHECK(ls.evaluations == 0);
    const auto peaks = find_peaks(ls);
    struct Expect {
        Metric m;
        double value, threshold, degradation;
    };
    for (const auto& e : {Expect{Metric::action_overall, 71.85, 0.3, 9.23}, Expect{Metric::action_mean, 69.59, 0.5, 4.26},
                          Expect{Metric::reason_overall, 54.77, 0.4, 18.67},
                          Expect{Metric::reason_mean, 37.62, 0.4, 13.65}}) {
        const auto& p = peaks.of(e.m);
        CHECK(pct2(p.value) == e.value);
        CHECK(p.threshold == e.threshold);
        CHECK(pct2(p.degradation) == e.degradation);
    }
}

TEST_CASE("reference threshold table: robust regions") {
    const auto ls = reference_landscape();
    const auto loose = robust_region(ls, 0.03);
    CHECK(loose.thresholds == std::vector<double>{0.3, 0.4, 0.5});
    CHECK(loose.contiguous);
    CHECK(loose.excluded.size() == 6);
    const auto tight = robust_region(ls, 0.01);
    CHECK(tight.thresholds == std::vector<double>{0.4});
    CHECK(robust_region(ls, 1.0).indices.size() == 9);
}

TEST_CASE("constant metrics: peak at the lowest threshold, region is the whole grid") {
    const auto g = make_grid({});
    const std::vector<double> flat(9, 50.0);
    const auto ls = constant_landscape(g, {flat, flat, flat, flat});
    for (const auto& p : find_peaks(ls).peaks) {
        CHECK(p.index == 0);
        CHECK(p.degradation == 0.0);
    }
    CHECK(robust_region(ls, 0.0).indices.size() == 9);
}

TEST_CASE("all-zero metric makes every grid point robust") {
    const auto g = make_grid({});
    const std::vector<double> zero(9, 0.0);
    auto ls = constant_landscape(g, {zero, zero, zero, zero});
    CHECK(robust_region(ls, 0.03).indices.size() == 9);
}

TEST_CASE("property: robust region is monotone in the tolerance and contains no failures") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 100.0);
    const auto g = make_grid({});
    for (int trial = 0; trial < 200; ++trial) {
        std::array<std::vector<double>, 4> rows;
        for (auto& row : rows) {
            row.resize(9);
            for (auto& v : row) v = std::round(unit(rng) * 100) / 100;
        }
        const auto ls = constant_landscape(g, rows);
        const auto peaks = find_peaks(ls);
        std::size_t prev = 0;
        for (double tol : {0.0, 0.01, 0.03, 0.1, 0.3, 1.0}) {
            const auto region = robust_region(ls, tol);
            CHECK(region.indices.size() >= prev);
            prev = region.indices.size();
            CHECK(region.indices.size() + region.excluded.size() == 9);
            for (std::size_t idx : region.indices) {
                for (Metric m : kMetrics) CHECK(ls.profile(m)[idx] >= (1.0 - tol) * peaks.of(m).value);
            }
        }
        CHECK(prev == 9);
        for (Metric m : kMetrics) {
            const auto prof = ls.profile(m);
            const auto& p = peaks.of(m);
            for (std::size_t k = 0; k < prof.size(); ++k) {
                CHECK(prof[k] <= p.value);
                if (k < p.index) CHECK(prof[k] < p.value);
            }
            CHECK(p.degradation >= 0.0);
        }
    }
}

TEST_CASE("property: peak location is invariant under positive affine maps") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto g = make_grid({});
    for (int trial = 0; trial < 100; ++trial) {
        std::array<std::vector<double>, 4> rows, scaled;
        const double a = 0.5 + unit(rng), b = unit(rng) * 10;
        for (std::size_t m = 0; m < 4; ++m) {
            for (int k = 0; k < 9; ++k) {
                // Integer-valued inputs keep a*x+b order-preserving in floating point.
                const double v = std::floor(unit(rng) * 20);
                rows[m].push_back(v);
                scaled[m].push_back(a * v + b);
            }
        }
        const auto p1 = find_peaks(constant_landscape(g, rows));
        const auto p2 = find_peaks(constant_landscape(g, scaled));
        for (Metric m : kMetrics) CHECK(p1.of(m).index == p2.of(m).index);
    }
}

TEST_CASE("fixture parsing accepts both orientations") {
    const std::string rows =
        "metric,0.1,0.2\n"
        "f1_action_overall,10,20\nf1_action_mean,11,21\nf1_reason_overall,12,22\nf1_reason_mean,13,23\n";
    const std::string cols =
        "threshold,F1-action-overall,F1-action-mean,F1-reason-overall,F1-reason-mean\n"
        "0.1,10,11,12,13\n0.2,20,21,22,23\n";
    const auto a = parse_fixture_csv(rows);
    const auto b = parse_fixture_csv(cols);
    CHECK(a.thresholds == b.thresholds);
    CHECK(a.percent == b.percent);
    const auto ls = load_landscape_fixture(a, make_grid({0.1, 0.2, 0.1}));
    CHECK(ls.at(1, 0).action_overall == doctest::Approx(0.20));
    CHECK(ls.at(1, 0).reason_overall == doctest::Approx(0.12));
}

TEST_CASE("fixture errors") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const InputError& e) {
            return e.kind();
        }
        return ErrorKind::invalid_config;
    };
    const auto table = parse_fixture_csv(read_file(THRESH_DATA_DIR "/bdd_oia_thresholds.csv"));
    CHECK(kind_of([&] { load_landscape_fixture(table, make_grid({0.1, 0.8, 0.1})); }) == ErrorKind::grid_mismatch);
    CHECK(kind_of([&] { load_landscape_fixture(table, make_grid({0.2, 1.0, 0.1})); }) == ErrorKind::grid_mismatch);
    CHECK(kind_of([] { parse_fixture_csv("metric,0.1\nf1_action_overall,abc\n"); }) == ErrorKind::malformed_table);
    CHECK(kind_of([] { parse_fixture_csv("metric,0.1,0.2\nf1_action_overall,1\n"); }) == ErrorKind::malformed_table);
    CHECK(kind_of([] { parse_fixture_csv(""); }) == ErrorKind::malformed_table);
}
