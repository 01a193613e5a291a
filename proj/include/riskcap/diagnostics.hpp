#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "riskcap/capital.hpp"

namespace riskcap {

/// Outcome of a finiteness theorem applied to (A, S). Any witness shipped
/// in a report has been re-evaluated via required_capital (or, for assets
/// the solver refuses, by direct membership probes) before emission.
struct FinitenessReport {
    bool never_pos_inf = false;
    bool never_neg_inf = false;
    bool finite_everywhere = false;
    std::optional<Position> pos_inf_witness;  // evaluates to +inf
    std::optional<Position> neg_inf_witness;  // evaluates to -inf
    std::optional<double> lipschitz_bound;
    std::string rule;
};

enum class ContinuityScope { Pointwise, Global };

struct ContinuityWitness {
    std::string description;
    Position position;
    /// Estimated limiting gap |lim rho(X_n) - rho(X)| along the witness
    /// sequence; strictly positive for a genuine discontinuity.
    double gap = 0.0;
};

struct ContinuityReport {
    ContinuityScope scope = ContinuityScope::Pointwise;
    bool continuous = false;
    bool lsc = false;
    bool usc = false;
    std::optional<ContinuityWitness> witness;
    std::optional<double> lipschitz_bound;
};

/// VaR finiteness: no +inf iff P[S_T=0] <= alpha, no -inf iff
/// P[S_T>0] > alpha (positive-probability states only).
FinitenessReport var_finiteness(const TradedAsset& s, double alpha);

/// TVaR finiteness: finite everywhere iff P[S_T=0] < alpha, which must
/// agree with tvar(S_T, alpha) < 0 (a mismatch is an internal error).
/// Attaches the Lipschitz bound S0 / (-tvar(S_T, alpha)) when finite.
FinitenessReport tvar_finiteness(const TradedAsset& s, double alpha);

/// Conic acceptance sets: no +inf iff S_T is interior, no -inf iff -S_T
/// is outside the closure; for convex (coherent) cones finiteness
/// collapses to the interior test alone.
FinitenessReport conic_finiteness(const AcceptanceSpec& a,
                                  const TradedAsset& s);

/// Exact pointwise-continuity test for VaR acceptance at a position with
/// finite capital: with Xt = X + (rho(X)/S0) S_T, continuity holds iff
/// P[Xt<0] + P[{X=0} and {S_T=0}] <= alpha. Lower semicontinuity always
/// holds (the acceptance set is closed).
ContinuityReport var_pointwise_continuity(const TradedAsset& s, double alpha,
                                          const Position& x);

/// Exact global-continuity test for VaR acceptance: with z = P[S_T=0],
/// the measure is globally continuous iff no subset of positive-probability
/// states inside {S_T>0} has total mass in (alpha-z, alpha]. Decided by
/// meet-in-the-middle subset-sum enumeration (at most 44 such states).
ContinuityReport var_global_continuity(const TradedAsset& s, double alpha);

/// Numeric probe of both semicontinuity sequences X +- (1/n) 1_Omega up to
/// n_max. Gaps are extrapolated to their n -> inf limit assuming O(1/n)
/// decay, so an exactly-linear continuous response reports a zero gap.
ContinuityReport semicontinuity_probe(const AcceptanceSpec& a,
                                      const TradedAsset& s, const Position& x,
                                      int n_max = 64);

/// L = S0 / (-tvar(S_T, alpha)); requires tvar(S_T, alpha) < 0.
double tvar_lipschitz_bound(const TradedAsset& s, double alpha);

/// Meet-in-the-middle subset-sum query: a bitmask over `probs` whose sum
/// lies in (lo_excl, hi_incl], with absolute tolerance 1e-12 at both
/// endpoints (strict at lo_excl, non-strict at hi_incl).
std::optional<std::uint64_t> subset_sum_in_window(
    const std::vector<double>& probs, double lo_excl, double hi_incl);

/// One refinement level of the discretized-asset demonstration.
struct RefinementRow {
    int k = 0;                      // 2^k states
    std::size_t states = 0;
    double gap_defaultable = 0.0;   // payoff not bounded away from zero
    double gap_bounded = 0.0;       // payoff identically 1
};

/// Qualitative demonstration: as a discretized model of an eligible payoff
/// that is not bounded away from zero refines from 2^k_min to 2^k_max
/// states, the maximum observed pointwise gap of the VaR-based measure
/// does not shrink, while the bounded-away variant's gap is exactly zero.
std::vector<RefinementRow> nonatomic_refinement_demo(int k_min = 4,
                                                     int k_max = 12,
                                                     double alpha = 0.25);

}  // namespace riskcap
