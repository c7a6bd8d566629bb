#pragma once

#include <cstdint>
#include <vector>

namespace ebp {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-squared distribution with df degrees of freedom.
double chi_squared_sf(double x, double df);

double binomial_pmf(std::int64_t n, std::int64_t k, double p);

struct GofResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    int bins = 0; // cells after pooling
};

// Pearson chi-squared goodness-of-fit test. observed[i] counts hits of value
// i, probs[i] is the model probability of value i. Adjacent cells are pooled
// until each expected count reaches min_expected.
GofResult chi_squared_gof(const std::vector<std::int64_t>& observed,
                          const std::vector<double>& probs,
                          double min_expected = 5.0);

} // namespace ebp
