#include "ebp/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "ebp/errors.hpp"

namespace ebp {

namespace {

// Per-individual sampler with the law's branch layout resolved up front.
// Draw order: one uniform picks the branch (register / exit / contaminate);
// geometric and poisson contamination counts come from standard transforms of
// further uniforms, and a draw beyond a truncation bound counts as an exit,
// matching the law's tail-to-p0 convention.
struct OffspringSampler {
    Family family;
    double q;
    double exit_hi;             // q + baseline p0
    int trunc = -1;             // truncation bound, -1 = none
    std::vector<double> cdf;    // finite family: thresholds after exit_hi
    double p = 0.0;             // geometric
    double inv_ln_p = 0.0;
    double exp_neg_lambda = 0.0; // poisson

    explicit OffspringSampler(const OffspringLaw& law)
        : family(law.family()), q(law.q()) {
        switch (family) {
        case Family::finite: {
            exit_hi = q + law.p0();
            double acc = exit_hi;
            for (double pj : law.finite_masses()) {
                acc += pj;
                cdf.push_back(acc);
            }
            break;
        }
        case Family::geometric: {
            p = law.geometric_p();
            exit_hi = q + (1.0 - p - q); // baseline exit mass, before truncation
            inv_ln_p = 1.0 / std::log(p);
            if (law.truncation()) trunc = *law.truncation();
            break;
        }
        case Family::poisson: {
            double lambda = law.poisson_lambda();
            exp_neg_lambda = std::exp(-lambda);
            exit_hi = q + (exp_neg_lambda - q); // = e^{-lambda}
            if (law.truncation()) trunc = *law.truncation();
            break;
        }
        }
    }

    // Contribution of one individual: number of new contaminated individuals
    // and whether it registered.
    inline void draw(CounterRng& rng, std::int64_t& z1, std::int64_t& z2) const {
        double u = rng.next_unit();
        if (u < q) {
            ++z2;
            return;
        }
        if (u < exit_hi) return;
        switch (family) {
        case Family::finite: {
            // inverse-CDF walk; k is small
            std::size_t j = 0;
            while (j + 1 < cdf.size() && u >= cdf[j]) ++j;
            z1 += static_cast<std::int64_t>(j) + 1;
            return;
        }
        case Family::geometric: {
            // conditional on contaminating, j - 1 ~ Geometric(1 - p)
            double v = rng.next_open();
            auto j = 1 + static_cast<std::int64_t>(std::floor(std::log(v) * inv_ln_p));
            if (trunc >= 0 && j > trunc) return; // tail folded into exit
            z1 += j;
            return;
        }
        case Family::poisson: {
            // Knuth product method, conditioned on j >= 1 by redraw
            std::int64_t j = 0;
            do {
                j = 0;
                double prod = rng.next_open();
                while (prod >= exp_neg_lambda) {
                    ++j;
                    prod *= rng.next_open();
                }
            } while (j == 0);
            if (trunc >= 0 && j > trunc) return;
            z1 += j;
            return;
        }
        }
    }
};

StepResult step_impl(const OffspringSampler& sampler, std::int64_t z1_prev,
                     CounterRng& rng, std::int64_t cap) {
    StepResult out;
    for (std::int64_t i = 0; i < z1_prev; ++i) {
        sampler.draw(rng, out.z1, out.z2);
        if (out.z1 > cap)
            throw ExplosionError("population exceeded cap of " +
                                 std::to_string(cap));
    }
    return out;
}

std::int64_t sample_initial(const InitialPopulation& init, CounterRng& rng) {
    if (init.is_fixed()) return init.fixed_count();
    const auto& w = init.weights();
    double u = rng.next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        if (u < acc) return static_cast<std::int64_t>(i) + 1;
    }
    return static_cast<std::int64_t>(w.size()); // guard against fp shortfall
}

Trajectory run_trajectory(const ModelConfig& config,
                          const OffspringSampler& sampler, std::uint64_t seed,
                          std::uint64_t replicate) {
    Trajectory traj;
    traj.z1.resize(static_cast<std::size_t>(config.days) + 1, 0);
    traj.z2.resize(static_cast<std::size_t>(config.days), 0);
    {
        CounterRng rng0(seed, replicate, 0);
        traj.z1[0] = sample_initial(config.init, rng0);
        if (traj.z1[0] > config.cap)
            throw ExplosionError("initial population exceeds cap", 0);
    }
    for (int d = 1; d <= config.days; ++d) {
        std::int64_t prev = traj.z1[d - 1];
        if (prev == 0) continue; // absorbed: z1 and z2 stay 0
        CounterRng rng(seed, replicate, static_cast<std::uint64_t>(d));
        try {
            StepResult r = step_impl(sampler, prev, rng, config.cap);
            traj.z1[d] = r.z1;
            traj.z2[d - 1] = r.z2;
        } catch (const ExplosionError& e) {
            throw ExplosionError(std::string(e.what()) + " on day " +
                                 std::to_string(d), d);
        }
    }
    return traj;
}

void validate_config(const ModelConfig& config) {
    if (config.days < 1) throw DomainError("simulation needs days >= 1");
    if (config.cap < 1) throw DomainError("population cap must be >= 1");
}

// Compensated (Kahan) accumulator; used inside fixed-size blocks so the
// final reduction order never depends on the thread count.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct BlockStats {
    std::vector<Kahan> s1, s2, s1sq, s2sq;
    std::vector<std::unordered_map<std::int64_t, std::int64_t>> hist;
    std::int64_t included = 0;
    std::int64_t exploded = 0;
    std::int64_t extinct = 0;

    explicit BlockStats(int horizon) {
        s1.resize(static_cast<std::size_t>(horizon) + 1);
        s2.resize(static_cast<std::size_t>(horizon) + 1);
        s1sq.resize(static_cast<std::size_t>(horizon) + 1);
        s2sq.resize(static_cast<std::size_t>(horizon) + 1);
        hist.resize(static_cast<std::size_t>(horizon) + 1);
    }
};

double histogram_quantile(const std::map<std::int64_t, std::int64_t>& hist,
                          std::int64_t total, double frac) {
    // nearest-rank: the k-th smallest value with k = ceil(frac * total)
    auto k = static_cast<std::int64_t>(std::ceil(frac * static_cast<double>(total)));
    if (k < 1) k = 1;
    if (k > total) k = total;
    std::int64_t seen = 0;
    for (const auto& [value, count] : hist) {
        seen += count;
        if (seen >= k) return static_cast<double>(value);
    }
    return hist.empty() ? 0.0 : static_cast<double>(hist.rbegin()->first);
}

constexpr std::int64_t kBlockSize = 256;

} // namespace

StepResult step(const OffspringLaw& law, std::int64_t z1_prev, CounterRng& rng,
                std::int64_t cap) {
    if (z1_prev < 0) throw DomainError("step: z1_prev must be >= 0");
    if (cap < 1) throw DomainError("step: cap must be >= 1");
    OffspringSampler sampler(law);
    return step_impl(sampler, z1_prev, rng, cap);
}

Trajectory simulate_trajectory(const ModelConfig& config, std::uint64_t seed,
                               std::uint64_t replicate) {
    validate_config(config);
    OffspringSampler sampler(config.law);
    return run_trajectory(config, sampler, seed, replicate);
}

EnsembleSummary monte_carlo(const ModelConfig& config, std::int64_t reps,
                            std::uint64_t master_seed, int threads) {
    validate_config(config);
    if (reps < 1) throw DomainError("monte_carlo: reps must be >= 1");

    const int horizon = config.days;
    const std::int64_t nblocks = (reps + kBlockSize - 1) / kBlockSize;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    if (static_cast<std::int64_t>(threads) > nblocks)
        threads = static_cast<int>(nblocks);

    OffspringSampler sampler(config.law);
    std::vector<BlockStats> blocks(static_cast<std::size_t>(nblocks),
                                   BlockStats(horizon));
    std::atomic<std::int64_t> next_block{0};

    auto worker = [&]() {
        for (;;) {
            std::int64_t b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            BlockStats& st = blocks[static_cast<std::size_t>(b)];
            std::int64_t lo = b * kBlockSize;
            std::int64_t hi = std::min(reps, lo + kBlockSize);
            for (std::int64_t r = lo; r < hi; ++r) {
                Trajectory traj;
                try {
                    traj = run_trajectory(config, sampler, master_seed,
                                          static_cast<std::uint64_t>(r));
                } catch (const ExplosionError&) {
                    ++st.exploded;
                    continue;
                }
                ++st.included;
                if (traj.z1[static_cast<std::size_t>(horizon)] == 0) ++st.extinct;
                for (int d = 0; d <= horizon; ++d) {
                    auto v1 = static_cast<double>(traj.z1[static_cast<std::size_t>(d)]);
                    st.s1[static_cast<std::size_t>(d)].add(v1);
                    st.s1sq[static_cast<std::size_t>(d)].add(v1 * v1);
                    ++st.hist[static_cast<std::size_t>(d)][traj.z1[static_cast<std::size_t>(d)]];
                    if (d >= 1) {
                        auto v2 = static_cast<double>(traj.z2[static_cast<std::size_t>(d) - 1]);
                        st.s2[static_cast<std::size_t>(d)].add(v2);
                        st.s2sq[static_cast<std::size_t>(d)].add(v2 * v2);
                    }
                }
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Fixed-order reduction over blocks: independent of the thread count.
    EnsembleSummary out;
    out.reps = reps;
    std::vector<double> sum1(static_cast<std::size_t>(horizon) + 1, 0.0);
    std::vector<double> sum2 = sum1, sumsq1 = sum1, sumsq2 = sum1;
    std::vector<std::map<std::int64_t, std::int64_t>> hist(
        static_cast<std::size_t>(horizon) + 1);
    std::int64_t extinct = 0;
    for (const BlockStats& st : blocks) {
        out.included += st.included;
        out.exploded += st.exploded;
        extinct += st.extinct;
        for (int d = 0; d <= horizon; ++d) {
            auto i = static_cast<std::size_t>(d);
            sum1[i] += st.s1[i].sum;
            sum2[i] += st.s2[i].sum;
            sumsq1[i] += st.s1sq[i].sum;
            sumsq2[i] += st.s2sq[i].sum;
            for (const auto& [value, count] : st.hist[i]) hist[i][value] += count;
        }
    }
    if (out.included == 0)
        throw ExplosionError("all replicates exceeded the population cap");

    auto n = static_cast<double>(out.included);
    out.extinct_fraction = static_cast<double>(extinct) / n;
    out.days.resize(static_cast<std::size_t>(horizon) + 1);
    for (int d = 0; d <= horizon; ++d) {
        auto i = static_cast<std::size_t>(d);
        DaySummary& ds = out.days[i];
        ds.day = d;
        ds.mean_z1 = sum1[i] / n;
        ds.mean_z2 = d == 0 ? 0.0 : sum2[i] / n;
        if (out.included > 1) {
            ds.var_z1 = std::max(0.0, (sumsq1[i] - sum1[i] * sum1[i] / n) / (n - 1.0));
            ds.var_z2 = d == 0 ? 0.0
                               : std::max(0.0, (sumsq2[i] - sum2[i] * sum2[i] / n) /
                                                   (n - 1.0));
        }
        ds.q025 = histogram_quantile(hist[i], out.included, 0.025);
        ds.q50 = histogram_quantile(hist[i], out.included, 0.5);
        ds.q975 = histogram_quantile(hist[i], out.included, 0.975);
    }
    return out;
}

} // namespace ebp
