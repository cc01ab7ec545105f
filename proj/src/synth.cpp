#include "thresh/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace thresh {

SynthSpec SynthSpec::uniform(std::uint64_t seed, std::size_t n_records, double separability,
                             double positive_rate, EvalSchema schema) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_records = n_records;
    spec.separability = separability;
    spec.action_positive_rate.assign(schema.action_task.size(), positive_rate);
    spec.reason_positive_rate.assign(schema.reason_task.size(), positive_rate);
    spec.schema = std::move(schema);
    return spec;
}

void SynthSpec::validate() const {
    auto fail = [](const char* msg) { throw InputError(ErrorKind::invalid_config, msg); };
    validate_schema(schema);
    if (n_records == 0) fail("synthetic set needs at least one record");
    if (!(separability >= 0.0 && separability <= 1.0)) fail("separability must lie in [0,1]");
    if (action_positive_rate.size() != schema.action_task.size() ||
        reason_positive_rate.size() != schema.reason_task.size()) {
        fail("one positive rate per class is required");
    }
    auto open_unit = [](double p) { return p > 0.0 && p < 1.0; };
    if (!std::all_of(action_positive_rate.begin(), action_positive_rate.end(), open_unit) ||
        !std::all_of(reason_positive_rate.begin(), reason_positive_rate.end(), open_unit)) {
        fail("positive rates must lie in (0,1)");
    }
}

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

void draw_task(std::mt19937_64& rng, const std::vector<double>& rates, double separability,
               std::vector<double>& scores, std::vector<std::uint8_t>& truth) {
    scores.resize(rates.size());
    truth.resize(rates.size());
    for (std::size_t j = 0; j < rates.size(); ++j) {
        truth[j] = unit_uniform(rng) < rates[j] ? 1 : 0;
        const double u = unit_uniform(rng);
        scores[j] = std::clamp(separability * truth[j] + (1.0 - separability) * u, 0.0, 1.0);
    }
}

}  // namespace

EvalSet generate(const SynthSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::vector<PredictionRecord> records(spec.n_records);
    char id[32];
    for (std::size_t i = 0; i < spec.n_records; ++i) {
        auto& rec = records[i];
        std::snprintf(id, sizeof id, "s%06zu", i);
        rec.id = id;
        draw_task(rng, spec.action_positive_rate, spec.separability, rec.action_scores, rec.action_truth);
        draw_task(rng, spec.reason_positive_rate, spec.separability, rec.reason_scores, rec.reason_truth);
    }
    return validate_evalset(std::move(records), spec.schema);
}

}  // namespace thresh
