#pragma once

#include <optional>
#include <string>

#include "riskcap/capital.hpp"

namespace riskcap {

/// Two traded assets with the same initial price on the same space; the
/// comparison theory is undefined for unequal prices and the constructor
/// rejects them rather than normalizing silently.
class AssetPair {
public:
    AssetPair(TradedAsset s, TradedAsset r);

    const TradedAsset& s() const { return s_; }
    const TradedAsset& r() const { return r_; }
    double price() const { return s_.price(); }

private:
    TradedAsset s_;
    TradedAsset r_;
};

enum class VerdictStatus { Refuted, NotRefuted };

/// Result of a budgeted refutation search. NOT_REFUTED is a bounded-search
/// verdict, never a proof; REFUTED always carries a witness that
/// re-evaluates to the claimed violation.
struct Verdict {
    VerdictStatus status = VerdictStatus::NotRefuted;
    std::optional<Position> witness;
    std::optional<double> witness_lambda;
    std::string note;
    long trials = 0;
    unsigned seed = 0;
};

/// Payoff of the portfolio with initial capital m: (m/P) S_T + lambda
/// (R_T - S_T). The lambda leg has zero time-0 cost since prices match.
Position leveraged_payoff(const AssetPair& pair, double m, double lambda);

/// Searches for a nonzero leverage lambda making the fully-leveraged
/// portfolio at rho_{A,S}(0) acceptable (closure membership). REFUTED
/// means leverage IS acceptable, i.e. the no-leverage condition fails.
Verdict no_leverage_check(const AcceptanceSpec& a, const AssetPair& pair,
                          long budget, unsigned seed = 42);

/// Refutation search for rho_{A,S} = rho_{B,R}: random positions and
/// translation escapes along R_T - S_T; a witness is confirmed by
/// evaluating both capital requirements and exhibiting a gap > 1e-8.
Verdict equality_check(const AcceptanceSpec& a, const AcceptanceSpec& b,
                       const AssetPair& pair, long budget,
                       unsigned seed = 42);

struct DominanceWitnesses {
    Position low;   // rho_S < rho_R - tol
    Position high;  // rho_S > rho_R + tol
};

struct DominanceResult {
    std::optional<DominanceWitnesses> witnesses;
    /// Attached when the search comes back empty: the equality verdict
    /// for the same pair and budget.
    std::optional<Verdict> equality;
    long trials = 0;
    unsigned seed = 0;
};

/// Searches for violations of dominance in BOTH directions. One-sided
/// strict dominance between same-price assets is impossible, so either
/// both witnesses exist or the two measures are (empirically) equal.
DominanceResult dominance_refute(const AcceptanceSpec& a,
                                 const AssetPair& pair, long budget,
                                 unsigned seed = 42);

}  // namespace riskcap
