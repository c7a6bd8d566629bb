#include "ebp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ebp/errors.hpp"
#include "json.hpp"

namespace ebp {

namespace {

constexpr double kMassTol = 1e-12;

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError(std::string(name) + " must lie in [0, 1]");
}

void check_unit_interval(double s, const char* name) {
    if (!(s >= 0.0 && s <= 1.0))
        throw DomainError(std::string("p.g.f. argument ") + name +
                          " must lie in [0, 1]");
}

double poisson_mass(double lambda, int j) {
    return std::exp(-lambda + j * std::log(lambda) -
                    std::lgamma(static_cast<double>(j) + 1.0));
}

} // namespace

const char* to_string(Family f) {
    switch (f) {
    case Family::finite: return "finite";
    case Family::geometric: return "geometric";
    case Family::poisson: return "poisson";
    }
    return "?";
}

const char* to_string(Criticality c) {
    switch (c) {
    case Criticality::subcritical: return "subcritical";
    case Criticality::critical: return "critical";
    case Criticality::supercritical: return "supercritical";
    }
    return "?";
}

OffspringLaw OffspringLaw::finite(double p0, std::vector<double> contamination,
                                  double q) {
    if (contamination.empty())
        throw ValidationError("finite law needs at least one contamination mass");
    check_prob(p0, "p0");
    check_prob(q, "q");
    double sum = p0 + q;
    for (std::size_t j = 0; j < contamination.size(); ++j) {
        check_prob(contamination[j], "p_j");
        sum += contamination[j];
    }
    if (std::fabs(sum - 1.0) > kMassTol) {
        std::ostringstream os;
        os << "law masses sum to " << sum << ", expected 1";
        throw ValidationError(os.str());
    }
    OffspringLaw law;
    law.family_ = Family::finite;
    law.p0_ = p0;
    law.q_ = q;
    law.pj_ = std::move(contamination);
    return law;
}

OffspringLaw OffspringLaw::geometric(double p, double q,
                                     std::optional<int> truncation) {
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("geometric success parameter must lie in (0, 1)");
    check_prob(q, "q");
    if (q > 1.0 - p + kMassTol)
        throw ValidationError("geometric family requires q <= 1 - p");
    if (truncation && *truncation < 1)
        throw ValidationError("truncation bound must be >= 1");
    OffspringLaw law;
    law.family_ = Family::geometric;
    law.q_ = q;
    law.p_ = p;
    law.trunc_ = truncation;
    double kept = p; // sum of (1-p) p^j over j >= 1
    if (truncation) {
        kept = 0.0;
        double term = (1.0 - p) * p;
        for (int j = 1; j <= *truncation; ++j) {
            kept += term;
            term *= p;
        }
    }
    law.p0_ = std::max(0.0, 1.0 - q - kept);
    return law;
}

OffspringLaw OffspringLaw::poisson(double lambda, double q,
                                   std::optional<int> truncation) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError("poisson rate must be positive");
    check_prob(q, "q");
    if (q > std::exp(-lambda) + kMassTol)
        throw ValidationError("poisson family requires q <= exp(-lambda)");
    if (truncation && *truncation < 1)
        throw ValidationError("truncation bound must be >= 1");
    OffspringLaw law;
    law.family_ = Family::poisson;
    law.q_ = q;
    law.lambda_ = lambda;
    law.trunc_ = truncation;
    double kept = -std::expm1(-lambda); // 1 - e^{-lambda}
    if (truncation) {
        kept = 0.0;
        for (int j = 1; j <= *truncation; ++j) kept += poisson_mass(lambda, j);
    }
    law.p0_ = std::max(0.0, 1.0 - q - kept);
    return law;
}

double OffspringLaw::geometric_p() const {
    if (family_ != Family::geometric)
        throw DomainError("geometric_p: not a geometric law");
    return p_;
}

double OffspringLaw::poisson_lambda() const {
    if (family_ != Family::poisson)
        throw DomainError("poisson_lambda: not a poisson law");
    return lambda_;
}

const std::vector<double>& OffspringLaw::finite_masses() const {
    if (family_ != Family::finite)
        throw DomainError("finite_masses: not a finite law");
    return pj_;
}

int OffspringLaw::max_offspring() const {
    if (family_ == Family::finite) return static_cast<int>(pj_.size());
    if (trunc_) return *trunc_;
    throw DomainError("max_offspring: law has unbounded support");
}

double OffspringLaw::contamination_mass(int j) const {
    if (j < 1) throw DomainError("contamination_mass: j must be >= 1");
    switch (family_) {
    case Family::finite:
        return j <= static_cast<int>(pj_.size()) ? pj_[j - 1] : 0.0;
    case Family::geometric:
        if (trunc_ && j > *trunc_) return 0.0;
        return (1.0 - p_) * std::pow(p_, j);
    case Family::poisson:
        if (trunc_ && j > *trunc_) return 0.0;
        return poisson_mass(lambda_, j);
    }
    return 0.0;
}

double OffspringLaw::contamination_series(double s) const {
    switch (family_) {
    case Family::finite: {
        // Horner on p_1 s + p_2 s^2 + ... + p_k s^k
        double acc = 0.0;
        for (auto it = pj_.rbegin(); it != pj_.rend(); ++it) acc = (acc + *it) * s;
        return acc;
    }
    case Family::geometric: {
        if (!trunc_) return (1.0 - p_) * p_ * s / (1.0 - p_ * s);
        double acc = 0.0;
        double term = (1.0 - p_) * p_ * s;
        for (int j = 1; j <= *trunc_; ++j) {
            acc += term;
            term *= p_ * s;
        }
        return acc;
    }
    case Family::poisson: {
        if (!trunc_)
            return std::exp(-lambda_ * (1.0 - s)) - std::exp(-lambda_);
        double acc = 0.0;
        for (int j = 1; j <= *trunc_; ++j)
            acc += poisson_mass(lambda_, j) * std::pow(s, j);
        return acc;
    }
    }
    return 0.0;
}

double OffspringLaw::pgf_joint(double s1, double s2) const {
    check_unit_interval(s1, "s1");
    check_unit_interval(s2, "s2");
    if (s1 == 1.0 && s2 == 1.0) return 1.0; // total mass
    return p0_ + contamination_series(s1) + q_ * s2;
}

double OffspringLaw::pgf_marginal_t1(double s) const {
    check_unit_interval(s, "s");
    if (s == 1.0) return 1.0;
    return p0_ + q_ + contamination_series(s);
}

double OffspringLaw::pgf_marginal_t2(double s) const {
    check_unit_interval(s, "s");
    return 1.0 - q_ + q_ * s;
}

double OffspringLaw::pgf_iterate(double s, int n) const {
    if (n < 0) throw DomainError("pgf_iterate: n must be >= 0");
    check_unit_interval(s, "s");
    double v = s;
    for (int i = 0; i < n; ++i) v = pgf_marginal_t1(v);
    return v;
}

double OffspringLaw::mean_offspring() const {
    switch (family_) {
    case Family::finite: {
        double m = 0.0;
        for (std::size_t j = 0; j < pj_.size(); ++j)
            m += static_cast<double>(j + 1) * pj_[j];
        return m;
    }
    case Family::geometric: {
        if (!trunc_) return p_ / (1.0 - p_);
        double m = 0.0;
        double term = (1.0 - p_) * p_;
        for (int j = 1; j <= *trunc_; ++j) {
            m += j * term;
            term *= p_;
        }
        return m;
    }
    case Family::poisson: {
        if (!trunc_) return lambda_;
        double m = 0.0;
        for (int j = 1; j <= *trunc_; ++j) m += j * poisson_mass(lambda_, j);
        return m;
    }
    }
    return 0.0;
}

std::vector<double> OffspringLaw::offspring_pmf() const {
    if (!has_finite_support())
        throw DomainError("offspring_pmf: law has unbounded support; "
                          "use a finite or truncated family");
    int k = max_offspring();
    std::vector<double> pmf(static_cast<std::size_t>(k) + 1, 0.0);
    pmf[0] = p0_ + q_;
    for (int j = 1; j <= k; ++j) pmf[j] = contamination_mass(j);
    return pmf;
}

InitialPopulation InitialPopulation::fixed(std::int64_t n) {
    if (n < 1) throw ValidationError("initial population must be >= 1");
    InitialPopulation init;
    init.fixed_ = n;
    return init;
}

InitialPopulation InitialPopulation::distribution(std::vector<double> weights) {
    if (weights.empty())
        throw ValidationError("initial distribution needs at least one weight");
    double sum = 0.0;
    for (double w : weights) {
        check_prob(w, "initial weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kMassTol)
        throw ValidationError("initial distribution weights must sum to 1");
    InitialPopulation init;
    init.weights_ = std::move(weights);
    return init;
}

std::int64_t InitialPopulation::fixed_count() const {
    if (!fixed_) throw DomainError("fixed_count: not a fixed population");
    return *fixed_;
}

const std::vector<double>& InitialPopulation::weights() const {
    if (fixed_) throw DomainError("weights: not a distribution population");
    return weights_;
}

double InitialPopulation::mean() const {
    if (fixed_) return static_cast<double>(*fixed_);
    double m = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        m += static_cast<double>(i + 1) * weights_[i];
    return m;
}

double InitialPopulation::pgf(double s) const {
    check_unit_interval(s, "s");
    if (fixed_) return std::pow(s, static_cast<double>(*fixed_));
    double acc = 0.0;
    for (auto it = weights_.rbegin(); it != weights_.rend(); ++it)
        acc = (acc + *it) * s;
    return acc;
}

std::vector<double> InitialPopulation::pmf() const {
    if (fixed_) {
        std::vector<double> v(static_cast<std::size_t>(*fixed_) + 1, 0.0);
        v.back() = 1.0;
        return v;
    }
    std::vector<double> v(weights_.size() + 1, 0.0);
    for (std::size_t i = 0; i < weights_.size(); ++i) v[i + 1] = weights_[i];
    return v;
}

double process_pgf_z1(const OffspringLaw& law, const InitialPopulation& init,
                      int n, double s) {
    if (n < 0) throw DomainError("process_pgf_z1: n must be >= 0");
    return init.pgf(law.pgf_iterate(s, n));
}

double process_pgf_z2(const OffspringLaw& law, const InitialPopulation& init,
                      int n, double s) {
    if (n < 1)
        throw DomainError("process_pgf_z2: n must be >= 1 (Z2(0) = 0, its "
                          "p.g.f. is degenerate)");
    return init.pgf(law.pgf_iterate(law.pgf_marginal_t2(s), n - 1));
}

TheoreticalMeans theoretical_means(const OffspringLaw& law,
                                   const InitialPopulation& init, int n) {
    if (n < 0) throw DomainError("theoretical_means: n must be >= 0");
    double m = law.mean_offspring();
    double m0 = init.mean();
    TheoreticalMeans out;
    out.z1 = m0 * std::pow(m, n);
    out.z2 = n == 0 ? 0.0 : law.q() * m0 * std::pow(m, n - 1);
    return out;
}

OffspringLaw calibrate(Family family, double target_m, double q) {
    if (!(target_m > 0.0) || !std::isfinite(target_m))
        throw CalibrationError("target mean must be positive and finite");
    if (!(q >= 0.0 && q <= 1.0))
        throw CalibrationError("q must lie in [0, 1]");
    std::ostringstream os;
    switch (family) {
    case Family::finite: {
        // Two-point contamination law on {0, 2}: p_2 = m / 2.
        if (target_m >= 2.0)
            throw CalibrationError("finite two-point law covers means in (0, 2)");
        double p2 = target_m / 2.0;
        double p0 = 1.0 - q - p2;
        if (p0 < 0.0) {
            os << "infeasible q for finite two-point law: feasible q <= "
               << 1.0 - p2;
            throw CalibrationError(os.str());
        }
        return OffspringLaw::finite(p0, {0.0, p2}, q);
    }
    case Family::geometric: {
        double p = target_m / (1.0 + target_m);
        double qmax = 1.0 - p;
        if (q > qmax) {
            os << "infeasible q for geometric family: feasible q <= " << qmax;
            throw CalibrationError(os.str());
        }
        return OffspringLaw::geometric(p, q);
    }
    case Family::poisson: {
        double qmax = std::exp(-target_m);
        if (q > qmax) {
            os << "infeasible q for poisson family: feasible q <= " << qmax;
            throw CalibrationError(os.str());
        }
        return OffspringLaw::poisson(target_m, q);
    }
    }
    throw CalibrationError("unknown family");
}

Criticality classify(double m) {
    if (!(m >= 0.0) || !std::isfinite(m))
        throw DomainError("classify: m must be finite and >= 0");
    if (m < 1.0) return Criticality::subcritical;
    if (m > 1.0) return Criticality::supercritical;
    return Criticality::critical;
}

namespace {

using nlohmann::json;

json law_json(const OffspringLaw& law) {
    json j;
    j["family"] = to_string(law.family());
    j["q"] = law.q();
    j["p0"] = law.p0(); // derived for geometric/poisson, ignored on parse
    switch (law.family()) {
    case Family::finite:
        j["contamination"] = law.finite_masses();
        break;
    case Family::geometric:
        j["p"] = law.geometric_p();
        if (law.truncation()) j["truncation"] = *law.truncation();
        break;
    case Family::poisson:
        j["lambda"] = law.poisson_lambda();
        if (law.truncation()) j["truncation"] = *law.truncation();
        break;
    }
    return j;
}

} // namespace

std::string law_to_json(const OffspringLaw& law) { return law_json(law).dump(); }

OffspringLaw law_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("law JSON: ") + e.what());
    }
    try {
        std::string family = j.at("family").get<std::string>();
        double q = j.at("q").get<double>();
        std::optional<int> trunc;
        if (j.contains("truncation")) trunc = j["truncation"].get<int>();
        if (family == "finite") {
            return OffspringLaw::finite(
                j.at("p0").get<double>(),
                j.at("contamination").get<std::vector<double>>(), q);
        }
        if (family == "geometric")
            return OffspringLaw::geometric(j.at("p").get<double>(), q, trunc);
        if (family == "poisson")
            return OffspringLaw::poisson(j.at("lambda").get<double>(), q, trunc);
        throw ValidationError("law JSON: unknown family '" + family + "'");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("law JSON: ") + e.what());
    }
}

std::string init_to_json(const InitialPopulation& init) {
    json j;
    if (init.is_fixed()) {
        j["kind"] = "fixed";
        j["n"] = init.fixed_count();
    } else {
        j["kind"] = "distribution";
        j["weights"] = init.weights();
    }
    return j.dump();
}

InitialPopulation init_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("init JSON: ") + e.what());
    }
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "fixed")
            return InitialPopulation::fixed(j.at("n").get<std::int64_t>());
        if (kind == "distribution")
            return InitialPopulation::distribution(
                j.at("weights").get<std::vector<double>>());
        throw ValidationError("init JSON: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("init JSON: ") + e.what());
    }
}

} // namespace ebp
