#pragma once

// Random evaluation-set generators for property tests. Independent of the
// synth module: scores are drawn on a coarse lattice so ties and exact
// threshold hits happen often.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thresh/model.hpp"

namespace thresh::testing {

inline TaskSchema numbered_task(const std::string& name, std::size_t classes) {
    TaskSchema t{name, {}};
    for (std::size_t j = 0; j < classes; ++j) t.class_names.push_back(name + "_" + std::to_string(j));
    return t;
}

inline EvalSchema numbered_schema(std::size_t action_classes, std::size_t reason_classes) {
    return {numbered_task("action", action_classes), numbered_task("reason", reason_classes)};
}

/// Scores are k/20 for k in 0..20 when `lattice` is set, else uniform doubles.
inline std::vector<PredictionRecord> random_records(std::mt19937_64& rng, std::size_t n, std::size_t na,
                                                    std::size_t nr, bool lattice = true) {
    std::uniform_int_distribution<int> step(0, 20);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.4);
    auto score = [&] { return lattice ? step(rng) / 20.0 : unit(rng); };
    std::vector<PredictionRecord> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = out[i];
        r.id = "r" + std::to_string(i);
        for (std::size_t j = 0; j < na; ++j) {
            r.action_scores.push_back(score());
            r.action_truth.push_back(coin(rng) ? 1 : 0);
        }
        for (std::size_t j = 0; j < nr; ++j) {
            r.reason_scores.push_back(score());
            r.reason_truth.push_back(coin(rng) ? 1 : 0);
        }
    }
    return out;
}

/// 1..max_records records, 1..max_classes classes per task.
inline EvalSet random_evalset(std::mt19937_64& rng, std::size_t max_records, std::size_t max_classes,
                              bool lattice = true) {
    std::uniform_int_distribution<std::size_t> records(1, max_records);
    std::uniform_int_distribution<std::size_t> classes(1, max_classes);
    const auto na = classes(rng);
    const auto nr = classes(rng);
    return validate_evalset(random_records(rng, records(rng), na, nr, lattice), numbered_schema(na, nr));
}

}  // namespace thresh::testing
