// Acceptance suite: one check per release criterion, each printing a
// [PASS]/[FAIL] line with the measured values. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ebp/estimate.hpp"
#include "ebp/exact.hpp"
#include "ebp/ingest.hpp"
#include "ebp/io.hpp"
#include "ebp/model.hpp"
#include "ebp/simulate.hpp"
#include "ebp/stats.hpp"

namespace fs = std::filesystem;
using namespace ebp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion
              << ": " << detail << "\n";
    if (!ok) ++failures;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const std::vector<std::int64_t> kBulgaria = {4,  0,  2,  1,  16, 8,  10,
                                             10, 11, 19, 11, 18, 17, 36,
                                             22, 16, 19, 22, 22, 29, 38};

CaseSeries bulgaria() {
    return CaseSeries(parse_date("2020-03-08"), kBulgaria);
}

// 1. Harris on the 21-day reference series equals the integer-sum ratio
//    327/293 (tolerance 1e-12) and lies within 0.01 of the reference value 1.1093.
void criterion_1() {
    auto series = bulgaria();
    std::int64_t num = 0, den = 0; // independent integer-sum oracle
    for (int i = 2; i <= 21; ++i) num += kBulgaria[i - 1];
    for (int j = 1; j <= 20; ++j) den += kBulgaria[j - 1];
    double oracle = static_cast<double>(num) / static_cast<double>(den);

    auto t0 = Clock::now();
    double value = harris(series, 20).value;
    double elapsed = ms_since(t0);

    bool ok = num == 327 && den == 293 && std::fabs(value - oracle) <= 1e-12 &&
              std::fabs(value - 1.1093) < 0.01 && elapsed < 1.0;
    std::ostringstream os;
    os << "harris(20) = " << value << " vs 327/293 = " << oracle
       << ", |value - 1.1093| = " << std::fabs(value - 1.1093) << ", "
       << elapsed << " ms";
    report(1, ok, os.str());
}

// 2. Backtest with the mean overridden to 1.1093 reproduces the reference
//    rows k = 1..4 exactly: predicted (32, 24, 24, 21) vs observed
//    (38, 29, 22, 22).
void criterion_2() {
    auto series = bulgaria();
    auto t0 = Clock::now();
    auto rows = backtest(series, 5, 1.1093);
    double elapsed = ms_since(t0);

    struct Expected { int k; std::int64_t pred, obs; };
    const Expected table[] = {{1, 32, 38}, {2, 24, 29}, {3, 24, 22}, {4, 21, 22}};
    bool ok = elapsed < 1.0;
    std::ostringstream os;
    for (const auto& e : table) {
        const BacktestRow* row = nullptr;
        for (const auto& r : rows)
            if (r.k == e.k) row = &r;
        bool match = row && row->predicted == e.pred && row->observed == e.obs;
        ok = ok && match;
        if (row)
            os << "k=" << e.k << ": " << row->predicted << "/" << row->observed
               << " ";
    }
    os << "(expected 32/38 24/29 24/22 21/22), " << elapsed << " ms";
    report(2, ok, os.str());
}

// 3. alpha(38, 31) matches the reference share 0.5507 within 5e-5.
void criterion_3() {
    double a = alpha(38, 31.0);
    bool ok = std::fabs(a - 0.5507) < 5e-5;
    std::ostringstream os;
    os << "alpha(38, 31) = " << a << ", |diff| = " << std::fabs(a - 0.5507);
    report(3, ok, os.str());
}

// 4. Exact enumeration and the p.g.f. route agree within 1e-9 over the grid
//    of finite laws (k <= 3, N <= 2, n <= 4).
void criterion_4() {
    struct GridLaw { double p0; std::vector<double> pj; double q; };
    const std::vector<GridLaw> laws = {
        {0.3, {0.4}, 0.3},           {0.2, {0.3, 0.2}, 0.3},
        {0.1, {0.2, 0.3, 0.1}, 0.3}, {0.25, {0.05, 0.1, 0.3}, 0.3},
        {0.5, {0.2, 0.2, 0.1}, 0.0}, {0.0, {0.6, 0.1}, 0.3},
    };
    const double s_grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    auto t0 = Clock::now();
    double worst = 0.0;
    int checks = 0;
    for (const auto& g : laws) {
        auto law = OffspringLaw::finite(g.p0, g.pj, g.q);
        for (std::int64_t N : {1, 2}) {
            auto init = InitialPopulation::fixed(N);
            for (int n = 0; n <= 4; ++n) {
                auto d = exact_distribution(law, init, n);
                for (double s : s_grid) {
                    double f1 = 0.0;
                    for (auto it = d.z1.rbegin(); it != d.z1.rend(); ++it)
                        f1 = f1 * s + *it;
                    worst = std::max(worst,
                                     std::fabs(f1 - process_pgf_z1(law, init, n, s)));
                    ++checks;
                    if (n >= 1) {
                        double f2 = 0.0;
                        for (auto it = d.z2.rbegin(); it != d.z2.rend(); ++it)
                            f2 = f2 * s + *it;
                        worst = std::max(
                            worst, std::fabs(f2 - process_pgf_z2(law, init, n, s)));
                        ++checks;
                    }
                }
                double m1 = 0.0, m2 = 0.0;
                for (std::size_t i = 0; i < d.z1.size(); ++i)
                    m1 += static_cast<double>(i) * d.z1[i];
                for (std::size_t i = 0; i < d.z2.size(); ++i)
                    m2 += static_cast<double>(i) * d.z2[i];
                auto means = theoretical_means(law, init, n);
                worst = std::max(worst, std::fabs(m1 - means.z1));
                worst = std::max(worst, std::fabs(m2 - means.z2));
                checks += 2;
            }
        }
    }
    double elapsed = ms_since(t0);
    bool ok = worst <= 1e-9 && elapsed < 1000.0;
    std::ostringstream os;
    os << checks << " comparisons, worst |diff| = " << worst << ", " << elapsed
       << " ms";
    report(4, ok, os.str());
}

// 5. Monte Carlo mean tracking at reps = 1e5 for subcritical, critical and
//    supercritical geometric calibrations: every day within 3 standard errors
//    of m_0 m^n and q m_0 m^{n-1}.
void criterion_5() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream os;
    for (double m : {0.8, 1.0, 1.2}) {
        auto law = calibrate(Family::geometric, m, 0.3);
        ModelConfig cfg{law, InitialPopulation::fixed(1), 20, 100'000'000};
        auto s = monte_carlo(cfg, 100000, 20260810);
        auto n = static_cast<double>(s.included);
        double worst_sigma = 0.0;
        for (int d = 0; d <= 20; ++d) {
            auto i = static_cast<std::size_t>(d);
            double se1 = std::sqrt(s.days[i].var_z1 / n);
            double dev1 = std::fabs(s.days[i].mean_z1 - std::pow(m, d));
            if (se1 > 0.0) worst_sigma = std::max(worst_sigma, dev1 / se1);
            if (dev1 > 3.0 * se1 + 1e-12) ok = false;
            if (d >= 1) {
                double se2 = std::sqrt(s.days[i].var_z2 / n);
                double dev2 =
                    std::fabs(s.days[i].mean_z2 - 0.3 * std::pow(m, d - 1));
                if (se2 > 0.0) worst_sigma = std::max(worst_sigma, dev2 / se2);
                if (dev2 > 3.0 * se2 + 1e-12) ok = false;
            }
        }
        os << "m=" << m << " worst dev " << worst_sigma << " SE; ";
    }
    double elapsed = ms_since(t0);
    ok = ok && elapsed < 30000.0;
    os << elapsed << " ms";
    report(5, ok, os.str());
}

// 6. Chi-squared goodness of fit of simulated registrations against
//    Binomial(20, 0.3) over 1e5 draws, significance 1e-3.
void criterion_6() {
    auto law = calibrate(Family::geometric, 1.2, 0.3);
    std::vector<std::int64_t> counts(21, 0);
    CounterRng rng(424242);
    for (int i = 0; i < 100000; ++i) {
        auto r = step(law, 20, rng);
        ++counts[static_cast<std::size_t>(r.z2)];
    }
    std::vector<double> probs(21, 0.0);
    for (std::int64_t k = 0; k <= 20; ++k)
        probs[static_cast<std::size_t>(k)] = binomial_pmf(20, k, 0.3);
    auto gof = chi_squared_gof(counts, probs);
    bool ok = gof.p_value >= 1e-3;
    std::ostringstream os;
    os << "chi2 = " << gof.statistic << " (df " << gof.df
       << "), p = " << gof.p_value << " vs significance 1e-3";
    report(6, ok, os.str());
}

// 7. Median Harris error below 0.05 across 200 seeded supercritical runs
//    (m = 1.2, horizon 40).
void criterion_7() {
    auto law = calibrate(Family::geometric, 1.2, 0.3);
    ModelConfig cfg{law, InitialPopulation::fixed(50), 40, 100'000'000};
    std::vector<double> errors;
    for (std::uint64_t r = 0; r < 200; ++r) {
        auto traj = simulate_trajectory(cfg, 777, r);
        CaseSeries synthetic(parse_date("2020-01-01"), traj.z2);
        errors.push_back(
            std::fabs(latest_estimate(synthetic, EstimatorKind::harris).value - 1.2));
    }
    std::sort(errors.begin(), errors.end());
    double median = errors[errors.size() / 2];
    bool ok = median < 0.05;
    std::ostringstream os;
    os << "median |harris - 1.2| = " << median << " over 200 runs";
    report(7, ok, os.str());
}

// 8. Calibration round-trip: mean_offspring(calibrate(family, m, q)) = m
//    within 1e-12 for the geometric and poisson families.
void criterion_8() {
    double worst = 0.0;
    for (double m : {0.5, 1.0, 1.1093, 1.1348, 2.0}) {
        for (Family fam : {Family::geometric, Family::poisson}) {
            auto law = calibrate(fam, m, 0.1);
            worst = std::max(worst, std::fabs(law.mean_offspring() - m));
        }
    }
    bool ok = worst <= 1e-12;
    std::ostringstream os;
    os << "worst |mean - target| = " << worst << " over {0.5, 1.0, 1.1093, "
       << "1.1348, 2.0} x {geometric, poisson}";
    report(8, ok, os.str());
}

// 9. Bootstrap CI on the reference series: contains the point estimate,
//    half-width within 0.10 of the reference 0.2248, deterministic in seed.
void criterion_9() {
    auto series = bulgaria();
    BootstrapOptions opts;
    auto ci = ci_mean(series, EstimatorKind::harris, opts, 42);
    auto again = ci_mean(series, EstimatorKind::harris, opts, 42);
    double point = harris(series, 20).value;
    double hw = (ci.upper - ci.lower) / 2.0;
    bool ok = ci.lower <= point && point <= ci.upper &&
              std::fabs(hw - 0.2248) <= 0.10 && ci.lower == again.lower &&
              ci.upper == again.upper;
    std::ostringstream os;
    os << "ci = [" << ci.lower << ", " << ci.upper << "], half-width = " << hw
       << " vs 0.2248 +- 0.10, deterministic = "
       << (ci.lower == again.lower && ci.upper == again.upper);
    report(9, ok, os.str());
}

// 10. Two runs of the simulate subcommand with the same seed and different
//     thread counts produce byte-identical CSV outputs.
void criterion_10() {
    fs::remove_all("acceptance_out");
    fs::create_directories("acceptance_out");
    std::string base = "simulate --family geometric --m 1.1093 --q 0.3 "
                       "--init-n 1 --days 30 --reps 10000 --seed 42";
    auto run = [&](const std::string& args) {
        std::string cmd =
            std::string(EPIBRANCH_BIN) + " " + args + " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return status == -1 ? -1 : WEXITSTATUS(status);
    };
    int rc1 = run(base + " --threads 1 --out acceptance_out/a");
    int rc2 = run(base + " --threads 4 --out acceptance_out/b");
    int rc3 = run(base + " --threads 1 --out acceptance_out/c");
    bool ok = rc1 == 0 && rc2 == 0 && rc3 == 0;
    std::string mismatch;
    for (const char* f : {"ensemble.csv", "trajectory.csv", "cases.csv"}) {
        std::string a = read_file(std::string("acceptance_out/a/") + f);
        std::string b = read_file(std::string("acceptance_out/b/") + f);
        std::string c = read_file(std::string("acceptance_out/c/") + f);
        if (a != b || a != c) {
            ok = false;
            mismatch += std::string(f) + " ";
        }
    }
    std::ostringstream os;
    os << "exit codes " << rc1 << "/" << rc2 << "/" << rc3
       << (mismatch.empty() ? ", csv outputs byte-identical across thread "
                              "counts and reruns"
                            : ", mismatched: " + mismatch);
    report(10, ok, os.str());
}

} // namespace

int main() {
    auto t0 = Clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: FAILED")
              << " (" << ms_since(t0) / 1000.0 << " s)\n";
    return failures == 0 ? 0 : 1;
}
