#pragma once

#include "riskcap/core.hpp"

namespace riskcap {

/// Law of a position under P, restricted to positive-probability states.
/// Values are distinct and strictly increasing; masses are positive and the
/// cumulative masses end at 1.
struct SortedDistribution {
    std::vector<double> values;
    std::vector<double> masses;
    std::vector<double> cumulative;

    static SortedDistribution of(const Position& x);
};

void require_alpha(double alpha);

/// VaR_alpha(X) = inf{m : P[X+m<0] <= alpha}. Exact on finite laws:
/// returns -q with q the smallest attained value whose cumulative mass
/// exceeds alpha. Invariant under changes on zero-probability states.
double var(const Position& x, double alpha);

/// TVaR_alpha(X) = (1/alpha) * integral of VaR_beta(X) over (0, alpha].
/// beta -> VaR_beta(X) is a step function on finite laws, so the integral
/// is a finite segment sum; no quadrature involved.
double tvar(const Position& x, double alpha);

}  // namespace riskcap
