#pragma once

#include <cstddef>
#include <vector>

#include "ebp/errors.hpp"
#include "ebp/model.hpp"

namespace ebp {

// Exact finite-support distributions of (Z1(n), Z2(n)), obtained by repeated
// convolution of the offspring pmf. Feasible for finite (or truncated) laws
// and small horizons; used as the verification oracle for the p.g.f. path.
template <class S>
struct ExactDistributions {
    std::vector<S> z1; // z1[i] = P{Z1(n) = i}
    std::vector<S> z2; // z2[i] = P{Z2(n) = i}
    S dropped{};       // probability mass lost to the support cap
};

namespace detail {

template <class S>
std::vector<S> convolve_capped(const std::vector<S>& a, const std::vector<S>& b,
                               std::size_t cap) {
    std::size_t full = a.size() + b.size() - 1;
    std::vector<S> c(full < cap ? full : cap, S(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == S(0)) continue;
        std::size_t jmax = c.size() > i ? c.size() - i : 0;
        for (std::size_t j = 0; j < b.size() && j < jmax; ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

template <class S>
S vec_total(const std::vector<S>& v) {
    S t(0);
    for (const S& x : v) t += x;
    return t;
}

// One generation: mixture over the current population size l of the l-fold
// convolution of the offspring pmf.
template <class S>
std::vector<S> advance_generation(const std::vector<S>& cur,
                                  const std::vector<S>& offspring,
                                  std::size_t cap) {
    std::size_t next_size = 1;
    if (cur.size() > 1 && offspring.size() > 1) {
        next_size = (cur.size() - 1) * (offspring.size() - 1) + 1;
        if (next_size > cap) next_size = cap;
    }
    std::vector<S> next(next_size, S(0));
    std::vector<S> power{S(1)}; // offspring^{*l}
    for (std::size_t l = 0; l < cur.size(); ++l) {
        if (l > 0) power = convolve_capped(power, offspring, cap);
        if (cur[l] == S(0)) continue;
        for (std::size_t j = 0; j < power.size() && j < next.size(); ++j)
            next[j] += cur[l] * power[j];
    }
    return next;
}

// Binomial thinning: each of l individuals registers with probability q.
template <class S>
std::vector<S> thin_binomial(const std::vector<S>& dist, const S& q) {
    std::size_t lmax = dist.size() - 1;
    const S one(1);
    std::vector<S> qpow(lmax + 1, one), rpow(lmax + 1, one);
    for (std::size_t i = 1; i <= lmax; ++i) {
        qpow[i] = qpow[i - 1] * q;
        rpow[i] = rpow[i - 1] * (one - q);
    }
    std::vector<S> out(dist.size(), S(0));
    for (std::size_t l = 0; l <= lmax; ++l) {
        if (dist[l] == S(0)) continue;
        S c(1); // C(l, i), updated multiplicatively; exact for rationals
        for (std::size_t i = 0; i <= l; ++i) {
            out[i] += dist[l] * c * qpow[i] * rpow[l - i];
            if (i < l) {
                c *= S(static_cast<long>(l - i));
                c /= S(static_cast<long>(i + 1));
            }
        }
    }
    return out;
}

} // namespace detail

// Core enumeration over an arbitrary scalar (double or exact rational).
// init_pmf is the distribution of Z1(0) (index = count); offspring_pmf is the
// pmf of the type-1 offspring count of one individual (index 0 merges exit
// and registration); q is the registration mass.
template <class S>
ExactDistributions<S> enumerate_exact(const std::vector<S>& init_pmf,
                                      const std::vector<S>& offspring_pmf,
                                      const S& q, int n,
                                      std::size_t support_cap) {
    if (n < 0) throw DomainError("enumerate_exact: n must be >= 0");
    if (support_cap < 2) throw DomainError("enumerate_exact: cap too small");
    if (init_pmf.empty() || offspring_pmf.empty())
        throw DomainError("enumerate_exact: empty pmf");

    std::vector<S> cur(init_pmf.begin(),
                       init_pmf.size() <= support_cap
                           ? init_pmf.end()
                           : init_pmf.begin() + static_cast<std::ptrdiff_t>(support_cap));
    std::vector<S> prev = cur; // distribution of Z1(n-1)
    for (int gen = 1; gen <= n; ++gen) {
        prev = cur;
        cur = detail::advance_generation(cur, offspring_pmf, support_cap);
    }

    ExactDistributions<S> out;
    out.z1 = cur;
    if (n == 0) {
        out.z2 = {S(1)}; // Z2(0) = 0 surely
    } else {
        out.z2 = detail::thin_binomial(prev, q);
    }
    out.dropped = detail::vec_total(init_pmf) - detail::vec_total(out.z1);
    return out;
}

// Double-precision front end over a validated law. Throws TruncationError,
// reporting the mass deficit, when the support cap loses more than 1e-9 mass.
ExactDistributions<double> exact_distribution(const OffspringLaw& law,
                                              const InitialPopulation& init,
                                              int n,
                                              std::size_t support_cap = 4096);

} // namespace ebp
