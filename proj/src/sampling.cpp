#include "riskcap/sampling.hpp"

namespace riskcap {
namespace sampling {

SpacePtr random_space(std::mt19937_64& rng, std::size_t n,
                      bool allow_null_states) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "w" + std::to_string(i + 1);

    std::uniform_real_distribution<double> mass(0.0, 1.0);
    std::bernoulli_distribution null_state(0.15);
    std::vector<double> probs(n, 0.0);
    double sum = 0.0;
    while (sum == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            probs[i] = (allow_null_states && null_state(rng)) ? 0.0
                                                              : mass(rng);
            sum += probs[i];
        }
    }
    // Normalize so the last positive entry closes the sum to 1 exactly.
    std::size_t last = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        probs[i] /= sum;
        if (probs[i] > 0.0) last = i;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i != last) acc += probs[i];
    }
    probs[last] = 1.0 - acc;
    return build_space(labels, probs);
}

TradedAsset random_asset(std::mt19937_64& rng, const SpacePtr& space,
                         double default_prob) {
    std::uniform_real_distribution<double> pay(0.05, 2.0);
    std::uniform_real_distribution<double> price(0.5, 2.0);
    std::bernoulli_distribution defaults(default_prob);
    std::vector<double> v(space->size(), 0.0);
    bool any = false;
    while (!any) {
        for (double& x : v) {
            x = defaults(rng) ? 0.0 : pay(rng);
            any = any || x > 0.0;
        }
    }
    return TradedAsset(price(rng), Position(space, std::move(v)));
}

TradedAsset random_solvent_asset(std::mt19937_64& rng, const SpacePtr& space,
                                 double min_payoff) {
    std::uniform_real_distribution<double> pay(min_payoff, 2.0);
    std::uniform_real_distribution<double> price(0.5, 2.0);
    std::vector<double> v(space->size());
    for (double& x : v) x = pay(rng);
    return TradedAsset(price(rng), Position(space, std::move(v)));
}

Position random_position(std::mt19937_64& rng, const SpacePtr& space,
                         double half_width) {
    std::uniform_real_distribution<double> box(-half_width, half_width);
    std::vector<double> v(space->size());
    for (double& x : v) x = box(rng);
    return Position(space, std::move(v));
}

double random_alpha(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> draw(lo, hi);
    return draw(rng);
}

}  // namespace sampling
}  // namespace riskcap
