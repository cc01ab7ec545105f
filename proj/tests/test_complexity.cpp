#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "thresh/complexity.hpp"
#include "thresh/io.hpp"

using namespace thresh;

namespace {

bool within(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("reference object counts reproduce the expected densities") {
    const auto counts = read_object_counts(THRESH_DATA_DIR "/object_counts.json");
    REQUIRE(counts.size() == 3);
    struct Row {
        double ped, rider, veh, total, cx;
    };
    const Row expected[] = {{0.0661, 0.0087, 0.6958, 0.7706, 0.8062},
                            {0.0719, 0.0067, 0.4587, 0.5373, 0.5752},
                            {0.0887, 0.1639, 1.6576, 1.9102, 2.0038}};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto d = densities(counts[i]);
        INFO(counts[i].dataset_name);
        CHECK(within(d.d_pedestrian, expected[i].ped, 1e-4));
        CHECK(within(d.d_rider, expected[i].rider, 1e-4));
        CHECK(within(d.d_vehicle, expected[i].veh, 1e-4));
        CHECK(within(d.total_density, expected[i].total, 1e-4));
        CHECK(within(d.complexity, expected[i].cx, 1e-4));
    }
}

TEST_CASE("complexity score from rounded densities") {
    CHECK(within(complexity_score(0.0719, 0.0067, 0.4587), 0.5752, 1e-4));
    CHECK(complexity_score(0, 0, 0) == 0.0);
    CHECK(complexity_score(2, 0, 0) == 3.0);
    CHECK(complexity_score(0, 1, 0) == 1.3);
    CHECK_THROWS_AS(complexity_score(-0.1, 0, 0), InputError);
    CHECK(complexity_score(1, 1, 1, {1, 1, 1}) == 3.0);
}

TEST_CASE("zero images is rejected") {
    try {
        densities({"empty", 0, 1, 1, 1});
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(e.kind() == ErrorKind::zero_images);
    }
}

TEST_CASE("complexity is linear in the counts and ordered by weight") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::uint64_t> n(0, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        ObjectCounts c{"d", 1 + n(rng), n(rng), n(rng), n(rng)};
        const auto d = densities(c);
        CHECK(d.complexity >= d.total_density);
        CHECK(d.complexity <= 1.5 * d.total_density + 1e-12);
        ObjectCounts doubled = c;
        doubled.images *= 2;
        doubled.pedestrians *= 2;
        doubled.riders *= 2;
        doubled.vehicles *= 2;
        CHECK(densities(doubled).complexity == doctest::Approx(d.complexity).epsilon(1e-14));
    }
}

TEST_CASE("rider ratio against the BDD-OIA baseline") {
    const auto counts = read_object_counts(THRESH_DATA_DIR "/object_counts.json");
    std::vector<std::pair<std::string, DensityReport>> reports;
    for (const auto& c : counts) reports.emplace_back(c.dataset_name, densities(c));
    const auto table = compare_datasets(reports, "BDD-OIA");
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].dataset == "nu-AR");
    const auto& iust = table.rows[1];
    CHECK(iust.dataset == "IUST-XAI-AD");
    // Rounded densities give 18.8; the counts themselves give 18.7.
    CHECK(within(*iust.rider.value, 18.7, 0.05));
    CHECK(within(*iust.vehicle.value, 2.38, 0.01));
}

TEST_CASE("ratio edge cases and comparison errors") {
    CHECK(*ratio(1.0, 2.0).value == 0.5);
    CHECK_FALSE(ratio(1.0, 0.0).value.has_value());
    CHECK_FALSE(ratio(1.0, 0.0).undefined);
    CHECK(ratio(0.0, 0.0).undefined);
    const std::vector<std::pair<std::string, DensityReport>> one = {{"a", {}}};
    CHECK_THROWS_AS(compare_datasets(one, "a"), InputError);
    const std::vector<std::pair<std::string, DensityReport>> two = {{"a", {}}, {"b", {}}};
    CHECK_THROWS_AS(compare_datasets(two, "c"), InputError);
}

TEST_CASE("class distribution uses the whole set as denominator") {
    std::vector<PredictionRecord> recs = {
        {"a", {0.5}, {0.5, 0.5}, {1}, {1, 1}},
        {"b", {0.5}, {0.5, 0.5}, {0}, {1, 0}},
        {"c", {0.5}, {0.5, 0.5}, {1}, {0, 0}},
        {"d", {0.5}, {0.5, 0.5}, {0}, {1, 0}},
    };
    const auto es = validate_evalset(recs, testing::numbered_schema(1, 2));
    const auto reasons = class_distribution(es, Task::reason);
    CHECK(reasons.counts == std::vector<std::uint64_t>{3, 1});
    CHECK(reasons.percent == std::vector<double>{75.0, 25.0});
    CHECK(reasons.records == 4);
    CHECK(reasons.class_names == std::vector<std::string>{"reason_0", "reason_1"});
    CHECK(class_distribution(es, Task::action).percent == std::vector<double>{50.0});
}
