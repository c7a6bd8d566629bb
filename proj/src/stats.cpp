#include "ebp/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ebp/errors.hpp"

namespace ebp {

namespace {

// Series expansion of P(a, x), converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), converges fast for x > a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
        throw DomainError("regularized_gamma_p: need a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
        throw DomainError("regularized_gamma_q: need a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_squared_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(df / 2.0, x / 2.0);
}

double binomial_pmf(std::int64_t n, std::int64_t k, double p) {
    if (n < 0 || k < 0 || k > n)
        throw DomainError("binomial_pmf: need 0 <= k <= n");
    if (p < 0.0 || p > 1.0)
        throw DomainError("binomial_pmf: need p in [0, 1]");
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    double logp = std::lgamma(static_cast<double>(n) + 1.0) -
                  std::lgamma(static_cast<double>(k) + 1.0) -
                  std::lgamma(static_cast<double>(n - k) + 1.0) +
                  static_cast<double>(k) * std::log(p) +
                  static_cast<double>(n - k) * std::log1p(-p);
    return std::exp(logp);
}

GofResult chi_squared_gof(const std::vector<std::int64_t>& observed,
                          const std::vector<double>& probs,
                          double min_expected) {
    if (observed.size() != probs.size() || observed.empty())
        throw DomainError("chi_squared_gof: observed/probs size mismatch");
    std::int64_t total = 0;
    for (auto c : observed) {
        if (c < 0) throw DomainError("chi_squared_gof: negative count");
        total += c;
    }
    if (total == 0) throw DomainError("chi_squared_gof: no observations");

    // Pool adjacent cells until the expected count is large enough.
    std::vector<double> pooled_obs, pooled_exp;
    double acc_obs = 0.0, acc_exp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        acc_obs += static_cast<double>(observed[i]);
        acc_exp += probs[i] * static_cast<double>(total);
        if (acc_exp >= min_expected) {
            pooled_obs.push_back(acc_obs);
            pooled_exp.push_back(acc_exp);
            acc_obs = acc_exp = 0.0;
        }
    }
    if (acc_exp > 0.0 || acc_obs > 0.0) {
        if (pooled_obs.empty()) {
            pooled_obs.push_back(acc_obs);
            pooled_exp.push_back(acc_exp);
        } else {
            pooled_obs.back() += acc_obs;
            pooled_exp.back() += acc_exp;
        }
    }
    if (pooled_obs.size() < 2)
        throw DataError("chi_squared_gof: fewer than 2 cells after pooling");

    double stat = 0.0;
    for (std::size_t i = 0; i < pooled_obs.size(); ++i) {
        double diff = pooled_obs[i] - pooled_exp[i];
        stat += diff * diff / pooled_exp[i];
    }
    GofResult r;
    r.statistic = stat;
    r.bins = static_cast<int>(pooled_obs.size());
    r.df = r.bins - 1;
    r.p_value = chi_squared_sf(stat, static_cast<double>(r.df));
    return r;
}

} // namespace ebp
