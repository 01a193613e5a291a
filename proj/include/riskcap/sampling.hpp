#pragma once

#include <random>

#include "riskcap/core.hpp"

namespace riskcap {

/// Random model generators used by oracle-check and the test suites.
/// All draws are deterministic given the generator state.
namespace sampling {

/// Random space with `n` states; probabilities are normalized exactly.
/// With allow_null_states, some states may get probability zero.
SpacePtr random_space(std::mt19937_64& rng, std::size_t n,
                      bool allow_null_states = true);

/// Payoff values in [0, 2]; each state is fully defaulted (payoff zero)
/// with probability default_prob. At least one state pays.
TradedAsset random_asset(std::mt19937_64& rng, const SpacePtr& space,
                         double default_prob = 0.25);

/// Asset whose payoff is bounded below by min_payoff > 0 on every state.
TradedAsset random_solvent_asset(std::mt19937_64& rng, const SpacePtr& space,
                                 double min_payoff = 0.1);

Position random_position(std::mt19937_64& rng, const SpacePtr& space,
                         double half_width = 3.0);

double random_alpha(std::mt19937_64& rng, double lo = 0.05, double hi = 0.45);

}  // namespace sampling
}  // namespace riskcap
