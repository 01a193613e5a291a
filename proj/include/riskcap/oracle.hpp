#pragma once

#include "riskcap/acceptance.hpp"
#include "riskcap/core.hpp"

namespace riskcap {

/// Coarse grid plus refinement schedule for the brute-force capital scan.
struct GridSpec {
    double lo = -100.0;
    double hi = 100.0;
    double coarse_step = 0.01;
    int refine_rounds = 4;

    void validate() const;
};

/// Anti-regression ground truth. These implementations deliberately share
/// no quantile or sweep logic with the solvers: membership is recomputed
/// from scratch and the infimum is located by grid scan.
namespace oracle {

/// P[X < 0] by direct summation over positive-probability states.
double ruin_probability(const Position& x);

/// Membership in the acceptance set, recomputed without the solver path.
bool accepts(const AcceptanceSpec& a, const Position& x);

/// Tail-average identity for TVaR: with q the lower alpha-quantile,
/// -(1/alpha) * (E[X 1_{X<q}] + q (alpha - P[X<q])). Its agreement with
/// the segment-integral tvar() is itself a test, not an assumption.
double oracle_tvar(const Position& x, double alpha);

/// inf{m : X + (m/S0) S_T in A} evaluated literally on a grid, refined
/// refine_rounds times by factor 10. No acceptable grid point means
/// POS_INF; acceptability persisting at lo*{2,4,8} means NEG_INF (a
/// documented heuristic -- the finiteness reports are authoritative).
ExtendedAmount oracle_capital(const AcceptanceSpec& a, const TradedAsset& s,
                              const Position& x, const GridSpec& grid);

}  // namespace oracle
}  // namespace riskcap
