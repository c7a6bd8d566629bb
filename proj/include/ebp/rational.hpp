#pragma once

// Exact-rational mode of the enumeration oracle. Kept in its own header so
// the boost::multiprecision dependency is only pulled in where it is used
// (golden tests over tiny instances).

#include <boost/multiprecision/cpp_int.hpp>

#include "ebp/exact.hpp"

namespace ebp {

using Rational = boost::multiprecision::cpp_rational;

// Same contract as enumerate_exact, but inputs must be exact: pmfs summing to
// 1 with no rounding, and no mass may be lost to the support cap.
inline ExactDistributions<Rational>
exact_distribution_rational(const std::vector<Rational>& init_pmf,
                            const std::vector<Rational>& offspring_pmf,
                            const Rational& q, int n,
                            std::size_t support_cap = 4096) {
    auto check_pmf = [](const std::vector<Rational>& pmf, const char* name) {
        Rational total(0);
        for (const Rational& x : pmf) {
            if (x < 0 || x > 1)
                throw ValidationError(std::string(name) + ": mass out of [0, 1]");
            total += x;
        }
        if (total != 1)
            throw ValidationError(std::string(name) + ": masses must sum to 1 exactly");
    };
    check_pmf(init_pmf, "init pmf");
    check_pmf(offspring_pmf, "offspring pmf");
    if (q < 0 || q > 1)
        throw ValidationError("q must lie in [0, 1]");

    auto out = enumerate_exact<Rational>(init_pmf, offspring_pmf, q, n, support_cap);
    if (out.dropped != 0)
        throw TruncationError("rational enumeration hit the support cap",
                              out.dropped.convert_to<double>());
    return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace ebp
