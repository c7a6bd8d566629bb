#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ebp {

enum class Family { finite, geometric, poisson };

enum class Criticality { subcritical, critical, supercritical };

const char* to_string(Family f);
const char* to_string(Criticality c);

// Daily reproduction law of one contaminated individual. Per day the
// individual either leaves the process (mass p0), produces j >= 1 new
// contaminated individuals (mass p_j), or converts into a registered case
// (mass q). Total mass must be 1.
//
// Geometric and Poisson contamination tails may be truncated at a bound k;
// the dropped tail mass is folded into p0 (the registration mass q is kept as
// given), so truncated laws still sum to 1 and a draw beyond the bound counts
// as an exit.
class OffspringLaw {
public:
    // contamination holds p_1..p_k.
    static OffspringLaw finite(double p0, std::vector<double> contamination,
                               double q);
    // p_j = (1-p) p^j for j >= 1; p0 is derived as 1 - q - (kept tail mass).
    static OffspringLaw geometric(double p, double q,
                                  std::optional<int> truncation = {});
    // p_j = e^{-lambda} lambda^j / j!; p0 derived as for geometric.
    static OffspringLaw poisson(double lambda, double q,
                                std::optional<int> truncation = {});

    Family family() const { return family_; }
    double p0() const { return p0_; }
    double q() const { return q_; }
    std::optional<int> truncation() const { return trunc_; }
    double geometric_p() const;
    double poisson_lambda() const;
    const std::vector<double>& finite_masses() const;

    bool has_finite_support() const {
        return family_ == Family::finite || trunc_.has_value();
    }
    // Largest contamination count with positive mass (finite support only).
    int max_offspring() const;
    // P{xi1 = j} for j >= 1.
    double contamination_mass(int j) const;

    // Joint p.g.f. E[s1^{xi1} s2^{xi2}] = p0 + sum_j p_j s1^j + q s2.
    // Arguments restricted to [0, 1].
    double pgf_joint(double s1, double s2) const;
    // E[s^{xi1}] = pgf_joint(s, 1).
    double pgf_marginal_t1(double s) const;
    // E[s^{xi2}] = 1 - q + q s.
    double pgf_marginal_t2(double s) const;
    // n-fold self-composition of pgf_marginal_t1; n = 0 is the identity.
    double pgf_iterate(double s, int n) const;

    // m = E[xi1]. Truncated variants report the exact truncated mean.
    double mean_offspring() const;

    // pmf of the type-1 offspring count, index = j (index 0 merges exit and
    // registration). Finite-support laws only.
    std::vector<double> offspring_pmf() const;

private:
    OffspringLaw() = default;
    double contamination_series(double s) const; // sum_j p_j s^j

    Family family_ = Family::finite;
    double p0_ = 0.0;
    double q_ = 0.0;
    std::vector<double> pj_; // finite family only
    double p_ = 0.0;         // geometric success parameter
    double lambda_ = 0.0;    // poisson rate
    std::optional<int> trunc_;
};

// Day-0 population: either a fixed count N >= 1 or a distribution over
// counts k >= 1 (no mass at zero).
class InitialPopulation {
public:
    static InitialPopulation fixed(std::int64_t n);
    // weights[i] = P{Z1(0) = i + 1}.
    static InitialPopulation distribution(std::vector<double> weights);

    bool is_fixed() const { return fixed_.has_value(); }
    std::int64_t fixed_count() const;
    const std::vector<double>& weights() const;

    double mean() const; // m0
    double pgf(double s) const;
    // pmf over counts, index = count (index 0 always zero mass).
    std::vector<double> pmf() const;

private:
    InitialPopulation() = default;
    std::optional<std::int64_t> fixed_;
    std::vector<double> weights_;
};

// P.g.f. of Z1(n): h0 applied to the n-th iterate of the offspring marginal.
double process_pgf_z1(const OffspringLaw& law, const InitialPopulation& init,
                      int n, double s);
// P.g.f. of Z2(n) = F1(n-1; 1 - q + q s); requires n >= 1.
double process_pgf_z2(const OffspringLaw& law, const InitialPopulation& init,
                      int n, double s);

struct TheoreticalMeans {
    double z1 = 0.0; // E Z1(n) = m0 m^n
    double z2 = 0.0; // E Z2(n) = q m0 m^{n-1}, zero at n = 0
};
TheoreticalMeans theoretical_means(const OffspringLaw& law,
                                   const InitialPopulation& init, int n);

// Build a law of the given family whose offspring mean equals target_m.
// Family::finite places mass target_m / 2 on j = 2 (two-point law), so it
// covers means in (0, 2). Throws CalibrationError naming the feasible range
// when q does not fit the family constraint.
OffspringLaw calibrate(Family family, double target_m, double q);

// Exact trichotomy on m vs 1. Callers wanting a tolerance band around the
// critical point apply it themselves.
Criticality classify(double m);

// JSON round-trip used by the CLI configuration: object with keys
// family, q, and family-specific parameters.
std::string law_to_json(const OffspringLaw& law);
OffspringLaw law_from_json(const std::string& text);
std::string init_to_json(const InitialPopulation& init);
InitialPopulation init_from_json(const std::string& text);

} // namespace ebp
