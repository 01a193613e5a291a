#include "riskcap/quantile.hpp"

#include <algorithm>
#include <numeric>

namespace riskcap {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw AlphaOutOfRange("alpha must lie in (0,1), got " +
                              std::to_string(alpha));
    }
}

SortedDistribution SortedDistribution::of(const Position& x) {
    require_bound(x);
    const auto& sp = *x.space();
    std::vector<std::pair<double, double>> atoms;  // (value, mass)
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) > 0.0) atoms.emplace_back(x[i], sp.prob(i));
    }
    std::sort(atoms.begin(), atoms.end());

    SortedDistribution d;
    for (const auto& [v, p] : atoms) {
        if (!d.values.empty() && d.values.back() == v) {
            d.masses.back() += p;
        } else {
            d.values.push_back(v);
            d.masses.push_back(p);
        }
    }
    d.cumulative.resize(d.masses.size());
    std::partial_sum(d.masses.begin(), d.masses.end(), d.cumulative.begin());
    if (!d.cumulative.empty()) d.cumulative.back() = 1.0;
    return d;
}

double var(const Position& x, double alpha) {
    require_alpha(alpha);
    auto d = SortedDistribution::of(x);
    for (std::size_t k = 0; k < d.values.size(); ++k) {
        if (d.cumulative[k] > alpha) return -d.values[k];
    }
    // cumulative ends at 1 > alpha, so this is unreachable
    return -d.values.back();
}

double tvar(const Position& x, double alpha) {
    require_alpha(alpha);
    auto d = SortedDistribution::of(x);
    // VaR_beta(X) = -values[k] on the open segment (cum[k-1], cum[k]).
    double integral = 0.0;
    double lo = 0.0;
    for (std::size_t k = 0; k < d.values.size() && lo < alpha; ++k) {
        double hi = std::min(d.cumulative[k], alpha);
        integral += (hi - lo) * (-d.values[k]);
        lo = hi;
    }
    return integral / alpha;
}

}  // namespace riskcap
