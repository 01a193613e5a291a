#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskcap {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeProbability : Error { using Error::Error; };
struct ProbabilitySumMismatch : Error { using Error::Error; };
struct DuplicateLabel : Error { using Error::Error; };
struct EmptySpace : Error { using Error::Error; };
struct NonPositivePrice : Error { using Error::Error; };
struct NegativePayoff : Error { using Error::Error; };
struct ZeroPayoff : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };
struct UnboundPosition : Error { using Error::Error; };
struct DegenerateAsset : Error { using Error::Error; };
struct NotFinite : Error { using Error::Error; };
struct NotConic : Error { using Error::Error; };
struct TooManyStates : Error { using Error::Error; };
struct NonMonotonePredicate : Error { using Error::Error; };
struct DegenerateGrid : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// ScenarioSpace
// ---------------------------------------------------------------------------

/// Finite list of states with a probability vector. Probabilities must sum
/// to 1 within 1e-12 and are renormalized exactly on construction.
/// Zero-probability states are retained: they participate in the sup-norm
/// and in pointwise cone membership, but never in P[.] computations.
class ScenarioSpace {
public:
    static constexpr double kSumTolerance = 1e-12;

    static std::shared_ptr<const ScenarioSpace>
    create(std::vector<std::string> labels, std::vector<double> probs);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    double prob(std::size_t i) const { return probs_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& probs() const { return probs_; }

    /// Sum of the stored (renormalized) probabilities.
    double total_mass() const;

private:
    ScenarioSpace(std::vector<std::string> labels, std::vector<double> probs)
        : labels_(std::move(labels)), probs_(std::move(probs)) {}

    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

using SpacePtr = std::shared_ptr<const ScenarioSpace>;

// ---------------------------------------------------------------------------
// Position
// ---------------------------------------------------------------------------

/// One real payoff value per state, bound to its scenario space.
class Position {
public:
    Position() = default;
    Position(SpacePtr space, std::vector<double> values);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    bool bound() const { return static_cast<bool>(space_); }

private:
    SpacePtr space_;
    std::vector<double> values_;
};

/// Throws UnboundPosition unless both positions live on the same space.
void require_same_space(const Position& a, const Position& b);
void require_bound(const Position& x);

/// max over ALL states (including zero-probability ones) of |X(w)|.
double sup_norm(const Position& x);

Position constant_position(const SpacePtr& space, double c);
Position indicator(const SpacePtr& space, std::size_t state);

Position add(const Position& a, const Position& b);
Position sub(const Position& a, const Position& b);
Position scale(const Position& a, double lambda);
/// a + lambda * b
Position axpy(const Position& a, double lambda, const Position& b);

/// E[X] over positive-probability states.
double expectation(const Position& x);

// ---------------------------------------------------------------------------
// TradedAsset
// ---------------------------------------------------------------------------

/// Strictly positive time-0 price plus a nonnegative, nonzero payoff.
class TradedAsset {
public:
    TradedAsset(double price, Position payoff);

    double price() const { return price_; }
    const Position& payoff() const { return payoff_; }
    const SpacePtr& space() const { return payoff_.space(); }

    /// True when the payoff is zero in some positive-probability state.
    bool defaultable() const { return defaultable_; }

private:
    double price_ = 0.0;
    Position payoff_;
    bool defaultable_ = false;
};

/// Risk-free bond: price 1, payoff identically 1.
TradedAsset risk_free_bond(const SpacePtr& space);

// ---------------------------------------------------------------------------
// ExtendedAmount
// ---------------------------------------------------------------------------

enum class AmountKind { NegInf, Finite, PosInf };

enum class ConfidenceKind { Exact, Numeric, BudgetExhausted };

struct Confidence {
    ConfidenceKind kind = ConfidenceKind::Exact;
    double tolerance = 0.0;  // positive iff kind == Numeric

    static Confidence exact() { return {ConfidenceKind::Exact, 0.0}; }
    static Confidence numeric(double tol);
    static Confidence budget_exhausted() {
        return {ConfidenceKind::BudgetExhausted, 0.0};
    }
};

/// Value in R u {-inf, +inf} with attainment and confidence metadata.
/// Infinities never carry attained=true. Comparison follows the extended
/// order; arithmetic on infinities is deliberately not provided.
class ExtendedAmount {
public:
    static ExtendedAmount neg_inf(Confidence c = Confidence::exact());
    static ExtendedAmount pos_inf(Confidence c = Confidence::exact());
    static ExtendedAmount finite(double v, bool attained,
                                 Confidence c = Confidence::exact());

    AmountKind kind() const { return kind_; }
    bool is_finite() const { return kind_ == AmountKind::Finite; }
    bool is_pos_inf() const { return kind_ == AmountKind::PosInf; }
    bool is_neg_inf() const { return kind_ == AmountKind::NegInf; }

    /// Finite value; throws NotFinite on infinities.
    double value() const;
    bool attained() const { return attained_; }
    const Confidence& confidence() const { return confidence_; }

    friend bool operator<(const ExtendedAmount& a, const ExtendedAmount& b);
    friend bool operator<=(const ExtendedAmount& a, const ExtendedAmount& b) {
        return !(b < a);
    }

private:
    AmountKind kind_ = AmountKind::Finite;
    double value_ = 0.0;
    bool attained_ = false;
    Confidence confidence_;
};

// ---------------------------------------------------------------------------
// Operations from the build contract
// ---------------------------------------------------------------------------

SpacePtr build_space(const std::vector<std::string>& labels,
                     const std::vector<double>& probs);

TradedAsset build_asset(double price, Position payoff);

}  // namespace riskcap
