#pragma once

#include <cmath>

#include "riskcap/capital.hpp"
#include "riskcap/sampling.hpp"

namespace riskcap::testing {

/// w1=0.05, w2=0.06, w3=0.89.
inline SpacePtr three_state_space() {
    return build_space({"w1", "w2", "w3"}, {0.05, 0.06, 0.89});
}

/// Defaultable bond: price 1, payoff (0, 1, 1).
inline TradedAsset defaultable_bond(const SpacePtr& space) {
    return TradedAsset(1.0, Position(space, {0.0, 1.0, 1.0}));
}

inline Position pos(const SpacePtr& space, std::vector<double> v) {
    return Position(space, std::move(v));
}

inline bool close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol;
}

/// Finite value of a capital result; fails loudly on infinities.
inline double fin(const CapitalResult& r) { return r.amount.value(); }

}  // namespace riskcap::testing
