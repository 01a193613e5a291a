#include "riskcap/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace riskcap {

void GridSpec::validate() const {
    if (!(lo < hi)) throw DegenerateGrid("grid needs lo < hi");
    if (!(coarse_step > 0.0)) throw DegenerateGrid("grid step must be > 0");
    if (refine_rounds < 1) throw DegenerateGrid("need at least one refine round");
}

namespace oracle {

namespace {

// Sorted (value, mass) atoms over positive-probability states.
std::vector<std::pair<double, double>> law(const Position& x) {
    const auto& sp = *x.space();
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) > 0.0) atoms.emplace_back(x[i], sp.prob(i));
    }
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

double min_all_states(const Position& x) {
    return *std::min_element(x.values().begin(), x.values().end());
}

}  // namespace

double ruin_probability(const Position& x) {
    require_bound(x);
    double p = 0.0;
    const auto& sp = *x.space();
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) > 0.0 && x[i] < 0.0) p += sp.prob(i);
    }
    return p;
}

double oracle_tvar(const Position& x, double alpha) {
    require_alpha(alpha);
    auto atoms = law(x);

    // Lower quantile: smallest attained value whose cumulative mass
    // strictly exceeds alpha.
    double cum = 0.0;
    double q = atoms.back().first;
    for (const auto& [v, p] : atoms) {
        cum += p;
        if (cum > alpha) {
            q = v;
            break;
        }
    }

    double below_mean = 0.0;  // E[X 1_{X<q}]
    double below_mass = 0.0;  // P[X<q]
    for (const auto& [v, p] : atoms) {
        if (v < q) {
            below_mean += v * p;
            below_mass += p;
        }
    }
    return -(below_mean + q * (alpha - below_mass)) / alpha;
}

bool accepts(const AcceptanceSpec& a, const Position& x) {
    switch (a.kind()) {
        case AcceptanceKind::VaR:
            return ruin_probability(x) <= a.alpha();
        case AcceptanceKind::TVaR:
            return oracle_tvar(x, a.alpha()) <= 0.0;
        case AcceptanceKind::Expectation: {
            double e = 0.0;
            const auto& sp = *x.space();
            for (std::size_t i = 0; i < sp.size(); ++i) {
                if (sp.prob(i) > 0.0) e += sp.prob(i) * x[i];
            }
            return e >= a.floor();
        }
        case AcceptanceKind::PositiveCone:
            return min_all_states(x) >= 0.0;
        case AcceptanceKind::CustomCone:
            return contains(a, x);  // black box, nothing to re-derive
    }
    return false;
}

ExtendedAmount oracle_capital(const AcceptanceSpec& a, const TradedAsset& s,
                              const Position& x, const GridSpec& grid) {
    grid.validate();
    require_same_space(s.payoff(), x);

    auto member = [&](double m) {
        return accepts(a, axpy(x, m / s.price(), s.payoff()));
    };

    // Coarse scan for the first acceptable grid point.
    double first_good = grid.hi;
    double last_bad = grid.lo;
    bool found = false, any_bad = false;
    for (double m = grid.lo; m <= grid.hi + 0.5 * grid.coarse_step;
         m += grid.coarse_step) {
        if (member(m)) {
            first_good = m;
            found = true;
            break;
        }
        last_bad = m;
        any_bad = true;
    }
    if (!found) {
        return ExtendedAmount::pos_inf(Confidence::budget_exhausted());
    }

    double step = grid.coarse_step;
    if (!any_bad) {
        // Lowest grid point already acceptable: probe exponentially deeper.
        // A heuristic; can only distinguish "very negative" from unbounded
        // up to the probe depth.
        double probes[] = {2.0 * grid.lo, 4.0 * grid.lo, 8.0 * grid.lo};
        bool all_good = grid.lo < 0.0;
        double good = grid.lo;
        for (double m : probes) {
            if (!(m < good)) { all_good = false; break; }
            if (member(m)) {
                good = m;
            } else {
                last_bad = m;
                first_good = good;
                step = good - m;
                all_good = false;
                any_bad = true;
                break;
            }
        }
        if (all_good || !any_bad) {
            return ExtendedAmount::neg_inf(Confidence::budget_exhausted());
        }
    }

    // Refine the bracket [last_bad, first_good] by factor 10 per round.
    for (int r = 0; r < grid.refine_rounds; ++r) {
        step /= 10.0;
        double good = first_good;
        for (double m = last_bad + step; m < first_good; m += step) {
            if (member(m)) {
                good = m;
                break;
            }
            last_bad = m;
        }
        first_good = good;
    }
    return ExtendedAmount::finite(first_good, false, Confidence::numeric(step));
}

}  // namespace oracle
}  // namespace riskcap
