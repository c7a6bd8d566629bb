#pragma once

#include <cstdint>
#include <vector>

#include "ebp/model.hpp"
#include "ebp/rng.hpp"

namespace ebp {

struct ModelConfig {
    OffspringLaw law;
    InitialPopulation init;
    int days = 30;
    std::int64_t cap = 100'000'000; // per-day population cap
};

// One simulated path. z1 is indexed by day 0..days; z2[i] holds the
// registrations of day i+1 (there are none on day 0).
struct Trajectory {
    std::vector<std::int64_t> z1;
    std::vector<std::int64_t> z2;
    int days() const { return static_cast<int>(z2.size()); }
};

struct StepResult {
    std::int64_t z1 = 0; // new contaminated individuals
    std::int64_t z2 = 0; // registrations
};

// Advance one day: each of the z1_prev individuals independently registers
// (probability q), exits (p0), or produces j new contaminated individuals
// (p_j). Marginally z2 ~ Binomial(z1_prev, q). Throws ExplosionError when the
// new population exceeds cap.
StepResult step(const OffspringLaw& law, std::int64_t z1_prev, CounterRng& rng,
                std::int64_t cap = 100'000'000);

// Deterministic function of (config, seed, replicate). Day d consumes the
// stream keyed by (seed, replicate, d); the day-0 stream draws the initial
// population when it is a distribution.
Trajectory simulate_trajectory(const ModelConfig& config, std::uint64_t seed,
                               std::uint64_t replicate = 0);

struct DaySummary {
    int day = 0;
    double mean_z1 = 0.0;
    double mean_z2 = 0.0; // zero on day 0
    double var_z1 = 0.0;
    double var_z2 = 0.0;
    double q025 = 0.0; // quantiles of z1
    double q50 = 0.0;
    double q975 = 0.0;
};

struct EnsembleSummary {
    std::int64_t reps = 0;          // requested replicates
    std::int64_t included = 0;      // replicates aggregated
    std::int64_t exploded = 0;      // replicates discarded at the cap
    double extinct_fraction = 0.0;  // included paths with z1 = 0 at horizon
    std::vector<DaySummary> days;   // index 0..horizon
};

// Aggregates reps independent trajectories. Replicate r uses streams keyed by
// (master_seed, r, day), and the reduction runs over fixed-size blocks in a
// fixed order, so the result is bit-identical for any thread count.
// threads = 0 picks the hardware concurrency. Exploding replicates are
// counted in `exploded` and excluded from the statistics.
EnsembleSummary monte_carlo(const ModelConfig& config, std::int64_t reps,
                            std::uint64_t master_seed, int threads = 0);

} // namespace ebp
