#pragma once

// Seeded synthetic evaluation sets.
//
// Generator: std::mt19937_64 constructed directly from `seed` (the standard
// fixes its output sequence bit-for-bit). A uniform draw is
// (next() >> 11) * 2^-53. Per record, classes are visited action first then
// reason; each class draws truth (uniform < positive_rate) and then a noise
// value u, giving score = clamp(separability * truth + (1 - separability) * u).

#include <cstdint>
#include <random>
#include <vector>

#include "thresh/model.hpp"

namespace thresh {

struct SynthSpec {
    std::uint64_t seed = 0;
    std::size_t n_records = 100;
    EvalSchema schema = default_schema();
    double separability = 0.5;               // 0: scores ignore truth, 1: score == truth
    std::vector<double> action_positive_rate;  // one per action class, in (0,1)
    std::vector<double> reason_positive_rate;  // one per reason class, in (0,1)

    /// Spec over `schema` with every class at the same positive rate.
    static SynthSpec uniform(std::uint64_t seed, std::size_t n_records, double separability,
                             double positive_rate = 0.3, EvalSchema schema = default_schema());

    /// Throws InputError(invalid_config) when a field is out of range.
    void validate() const;
};

/// Uniform double in [0,1) from one 64-bit draw.
double unit_uniform(std::mt19937_64& rng);

/// Deterministic for a given spec; record ids are "s000000", "s000001", ...
EvalSet generate(const SynthSpec& spec);

}  // namespace thresh
