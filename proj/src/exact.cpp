#include "ebp/exact.hpp"

#include <sstream>

namespace ebp {

ExactDistributions<double> exact_distribution(const OffspringLaw& law,
                                              const InitialPopulation& init,
                                              int n, std::size_t support_cap) {
    std::vector<double> offspring = law.offspring_pmf(); // finite support only
    std::vector<double> start = init.pmf();
    auto out = enumerate_exact<double>(start, offspring, law.q(), n, support_cap);
    if (out.dropped > 1e-9) {
        std::ostringstream os;
        os << "support cap " << support_cap
           << " too small for exact enumeration; mass deficit " << out.dropped;
        throw TruncationError(os.str(), out.dropped);
    }
    return out;
}

} // namespace ebp
