#pragma once

#include <optional>

#include "riskcap/acceptance.hpp"
#include "riskcap/core.hpp"

namespace riskcap {

enum class SolveMethod {
    VarSweep,
    TvarBisect,
    ExpectationClosed,
    ConeBisect,
};

struct CapitalResult {
    ExtendedAmount amount;
    SolveMethod method = SolveMethod::VarSweep;
    /// X + (m/S0) * S_T at the returned m, when the amount is finite.
    std::optional<Position> acceptable_position;
    /// Conic pre-check flags (cone_bisect only).
    bool may_take_pos_inf = false;
    bool may_take_neg_inf = false;
};

struct ConeBisectOptions {
    int max_doublings = 64;
    double rel_tolerance = 1e-10;
};

/// rho_{A,S}(X) = inf{m : X + (m/S0) S_T in A}. Dispatches on the
/// acceptance kind: exact threshold sweep for VaR, plateau-aware bisection
/// for TVaR, a closed form for Expectation, and monotone bisection for
/// cones (exact for the positive cone).
CapitalResult required_capital(const AcceptanceSpec& a, const TradedAsset& s,
                               const Position& x);

/// Exact VaR solver. Let P0 = P[{S_T=0} and {X<0}], Pplus = P[S_T>0]
/// (positive-probability states only). P0 > alpha gives +inf;
/// P0 + Pplus <= alpha gives -inf. Otherwise the infimum is the smallest
/// threshold -S0*X(w)/S_T(w) at which the residual ruin mass drops to
/// <= alpha, and is always attained.
CapitalResult var_sweep(const TradedAsset& s, double alpha, const Position& x);

/// TVaR solver. h(m) = tvar(X + (m/S0) S_T, alpha) is continuous, convex
/// and non-increasing. When P[S_T=0] >= alpha, h is constant beyond an
/// exactly computable plateau point; a positive plateau value means +inf.
/// Otherwise the root of h(m) <= 0 is bracketed by doubling and bisected
/// to relative width 1e-10.
CapitalResult tvar_solve(const TradedAsset& s, double alpha, const Position& x);

/// Expectation acceptance has the closed form S0 * (floor - E[X]) / E[S_T]
/// when E[S_T] > 0; with E[S_T] = 0 investing is inert in expectation and
/// the result is -inf or +inf depending on whether X is already acceptable.
CapitalResult expectation_closed_form(const TradedAsset& s, double floor,
                                      const Position& x);

/// Monotone bisection for PositiveCone / CustomCone acceptance.
/// m -> membership is an up-set. The positive cone admits an exact
/// worst-state closed form; custom predicates are bracketed by doubling
/// (BUDGET_EXHAUSTED infinity when the doubling budget runs out).
CapitalResult cone_bisect(const AcceptanceSpec& a, const TradedAsset& s,
                          const Position& x, ConeBisectOptions opts = {});

}  // namespace riskcap
