#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "thresh/metrics.hpp"
#include "thresh/oracle.hpp"
#include "thresh/pr.hpp"
#include "thresh/sweep.hpp"

using namespace thresh;

namespace {

using Bits = std::vector<std::uint8_t>;
using Scores = std::vector<double>;

EvalSet single_class(const Scores& scores, const Bits& labels) {
    std::vector<PredictionRecord> recs;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        recs.push_back({"p" + std::to_string(i), {scores[i]}, {0.5}, {labels[i]}, {0}});
    }
    return validate_evalset(recs, testing::numbered_schema(1, 1));
}

void check_same_curve(const PRCurve& a, const PRCurve& b) {
    CHECK(a.task == b.task);
    CHECK(a.class_index == b.class_index);
    CHECK(a.positives == b.positives);
    CHECK(a.average_precision == b.average_precision);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].threshold == b.points[i].threshold);
        CHECK(a.points[i].precision == b.points[i].precision);
        CHECK(a.points[i].recall == b.points[i].recall);
        CHECK(a.points[i].is_grid_marker == b.points[i].is_grid_marker);
        CHECK(a.points[i].counts == b.points[i].counts);
    }
}

}  // namespace

TEST_CASE("average precision on small hand cases") {
    CHECK(*average_precision(Scores{0.9, 0.8, 0.7, 0.6}, Bits{1, 0, 1, 0}) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(*average_precision(Scores{0.9, 0.8, 0.1}, Bits{1, 1, 0}) == 1.0);
    CHECK(*average_precision(Scores{0.2, 0.4, 0.9}, Bits{1, 1, 1}) == 1.0);
    // A tie group counts as one cut: both enter with precision 1/2.
    CHECK(*average_precision(Scores{0.5, 0.5}, Bits{1, 0}) == 0.5);
    CHECK_FALSE(average_precision(Scores{0.3, 0.7}, Bits{0, 0}).has_value());
    CHECK_FALSE(average_precision(Scores{}, Bits{}).has_value());
    CHECK_THROWS_AS(average_precision(Scores{0.1}, Bits{1, 0}), InputError);
}

TEST_CASE("curve points for a hand-built class") {
    const auto es = single_class({0.9, 0.8, 0.7, 0.6}, {1, 0, 1, 0});
    const auto curve = pr_curve(es, Task::action, 0, {});
    CHECK(curve.positives == 2);
    REQUIRE(curve.points.size() == 4);
    const std::vector<std::pair<double, double>> expected = {{1.0, 0.5}, {0.5, 0.5}, {2.0 / 3.0, 1.0}, {0.5, 1.0}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(curve.points[i].precision == doctest::Approx(expected[i].first));
        CHECK(curve.points[i].recall == expected[i].second);
        CHECK_FALSE(curve.points[i].is_grid_marker);
    }
    CHECK(curve.points[0].threshold == doctest::Approx(0.85));
    CHECK(curve.points[3].threshold == doctest::Approx(0.3));
    CHECK(*curve.average_precision == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("grid markers: one per threshold, agreeing with binarize") {
    std::mt19937_64 rng(6);
    const auto es = testing::random_evalset(rng, 40, 5);
    const auto grid = make_grid({});
    for (const auto& curve : pr_curves(es, Task::reason, grid)) {
        std::vector<double> seen;
        for (const auto& p : curve.points) {
            if (!p.is_grid_marker) continue;
            seen.push_back(p.threshold);
            const auto cols = class_confusions(es, Task::reason, p.threshold);
            CHECK(p.counts == cols[curve.class_index]);
            CHECK(p.precision == precision(p.counts));
            CHECK(p.recall == recall(p.counts));
        }
        std::sort(seen.begin(), seen.end());
        CHECK(seen == grid);
    }
}

TEST_CASE("class index out of range") {
    const auto es = single_class({0.4}, {1});
    try {
        pr_curve(es, Task::action, 1, {});
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(e.kind() == ErrorKind::class_index_out_of_range);
    }
}

TEST_CASE("class without positives has no AP") {
    const auto es = single_class({0.4, 0.6}, {0, 0});
    const auto curve = pr_curve(es, Task::action, 0, make_grid({}));
    CHECK_FALSE(curve.average_precision.has_value());
    for (const auto& p : curve.points) CHECK(p.recall == 0.0);
}

TEST_CASE("property: AP matches the brute-force oracle") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> len(0, 100);
    std::uniform_int_distribution<int> lattice(0, 10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.35);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = len(rng);
        Scores s(n);
        Bits l(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = trial % 2 ? unit(rng) : lattice(rng) / 10.0;
            l[i] = coin(rng) ? 1 : 0;
        }
        const auto fast = average_precision(s, l);
        const auto slow = oracle::oracle_average_precision(s, l);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(std::abs(*fast - *slow) <= 1e-12);
            CHECK(*fast >= 0.0);
            CHECK(*fast <= 1.0);
        }
    }
}

TEST_CASE("property: AP depends only on score ranks") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> lattice(0, 10);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 200; ++trial) {
        Scores s(30), warped(30);
        Bits l(30);
        for (std::size_t i = 0; i < 30; ++i) {
            s[i] = lattice(rng) / 10.0;
            warped[i] = s[i] * s[i] * s[i];  // strictly increasing on [0,1]
            l[i] = coin(rng) ? 1 : 0;
        }
        CHECK(average_precision(s, l) == average_precision(warped, l));
    }
}

TEST_CASE("property: recall is non-increasing and markers lie on the staircase") {
    std::mt19937_64 rng(31);
    const auto grid = make_grid({0.0, 1.0, 0.05});
    for (int trial = 0; trial < 50; ++trial) {
        const auto es = testing::random_evalset(rng, 50, 4, trial % 2 == 0);
        for (const auto& curve : pr_curves(es, Task::action, grid)) {
            // Walking thresholds downward, recall never drops.
            for (std::size_t i = 1; i < curve.points.size(); ++i) {
                CHECK(curve.points[i].threshold <= curve.points[i - 1].threshold);
                CHECK(curve.points[i].recall >= curve.points[i - 1].recall);
                CHECK(curve.points[i].counts.predicted_positive() >= curve.points[i - 1].counts.predicted_positive());
            }
            for (const auto& m : curve.points) {
                if (!m.is_grid_marker || m.counts.predicted_positive() == 0) continue;
                const bool on_curve = std::any_of(curve.points.begin(), curve.points.end(), [&](const PRPoint& p) {
                    return !p.is_grid_marker && p.counts == m.counts;
                });
                CHECK(on_curve);
            }
        }
    }
}

TEST_CASE("parallel curves equal the serial reference") {
    std::mt19937_64 rng(37);
    const auto es = validate_evalset(testing::random_records(rng, 300, 4, 21, false), default_schema());
    const auto grid = make_grid({});
    for (Task task : {Task::action, Task::reason}) {
        const auto serial = pr_curves_serial(es, task, grid);
        for (int threads : {1, 2, 4}) {
            const auto parallel = pr_curves(es, task, grid, threads);
            REQUIRE(parallel.size() == serial.size());
            for (std::size_t j = 0; j < serial.size(); ++j) check_same_curve(parallel[j], serial[j]);
        }
    }
}
