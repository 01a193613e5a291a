#include "riskcap/core.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace riskcap {

// ---------------------------------------------------------------------------
// ScenarioSpace
// ---------------------------------------------------------------------------

std::shared_ptr<const ScenarioSpace>
ScenarioSpace::create(std::vector<std::string> labels,
                      std::vector<double> probs) {
    if (labels.empty() || probs.empty()) {
        throw EmptySpace("scenario space needs at least one state");
    }
    if (labels.size() != probs.size()) {
        throw Error("labels and probabilities differ in length");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw DuplicateLabel("duplicate state label: " + l);
        }
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) {
            throw NegativeProbability("negative probability " +
                                      std::to_string(p));
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw ProbabilitySumMismatch("probabilities sum to " +
                                     std::to_string(sum));
    }
    for (double& p : probs) p /= sum;
    bool any_positive = std::any_of(probs.begin(), probs.end(),
                                    [](double p) { return p > 0.0; });
    if (!any_positive) {
        throw EmptySpace("no state has positive probability");
    }
    return std::shared_ptr<const ScenarioSpace>(
        new ScenarioSpace(std::move(labels), std::move(probs)));
}

double ScenarioSpace::total_mass() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

SpacePtr build_space(const std::vector<std::string>& labels,
                     const std::vector<double>& probs) {
    return ScenarioSpace::create(labels, probs);
}

// ---------------------------------------------------------------------------
// Position
// ---------------------------------------------------------------------------

Position::Position(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw UnboundPosition("position built without a space");
    if (values_.size() != space_->size()) {
        throw Error("position has " + std::to_string(values_.size()) +
                    " values for a " + std::to_string(space_->size()) +
                    "-state space");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error("position value not finite");
    }
}

void require_bound(const Position& x) {
    if (!x.bound()) throw UnboundPosition("position not bound to a space");
}

void require_same_space(const Position& a, const Position& b) {
    require_bound(a);
    require_bound(b);
    if (a.space() != b.space()) {
        throw UnboundPosition("positions bound to different spaces");
    }
}

double sup_norm(const Position& x) {
    require_bound(x);
    double m = 0.0;
    for (double v : x.values()) m = std::max(m, std::abs(v));
    return m;
}

Position constant_position(const SpacePtr& space, double c) {
    return Position(space, std::vector<double>(space->size(), c));
}

Position indicator(const SpacePtr& space, std::size_t state) {
    std::vector<double> v(space->size(), 0.0);
    v.at(state) = 1.0;
    return Position(space, std::move(v));
}

Position add(const Position& a, const Position& b) {
    require_same_space(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return Position(a.space(), std::move(v));
}

Position sub(const Position& a, const Position& b) {
    require_same_space(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
    return Position(a.space(), std::move(v));
}

Position scale(const Position& a, double lambda) {
    require_bound(a);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * a[i];
    return Position(a.space(), std::move(v));
}

Position axpy(const Position& a, double lambda, const Position& b) {
    require_same_space(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + lambda * b[i];
    return Position(a.space(), std::move(v));
}

double expectation(const Position& x) {
    require_bound(x);
    const auto& sp = *x.space();
    double e = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) > 0.0) e += sp.prob(i) * x[i];
    }
    return e;
}

// ---------------------------------------------------------------------------
// TradedAsset
// ---------------------------------------------------------------------------

TradedAsset::TradedAsset(double price, Position payoff)
    : price_(price), payoff_(std::move(payoff)) {
    if (!(price_ > 0.0)) {
        throw NonPositivePrice("asset price must be > 0, got " +
                               std::to_string(price_));
    }
    require_bound(payoff_);
    double max_payoff = 0.0;
    for (double v : payoff_.values()) {
        if (v < 0.0) throw NegativePayoff("asset payoff must be >= 0");
        max_payoff = std::max(max_payoff, v);
    }
    if (!(max_payoff > 0.0)) throw ZeroPayoff("asset payoff identically zero");

    const auto& sp = *payoff_.space();
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) > 0.0 && payoff_[i] == 0.0) {
            defaultable_ = true;
            break;
        }
    }
}

TradedAsset build_asset(double price, Position payoff) {
    return TradedAsset(price, std::move(payoff));
}

TradedAsset risk_free_bond(const SpacePtr& space) {
    return TradedAsset(1.0, constant_position(space, 1.0));
}

// ---------------------------------------------------------------------------
// ExtendedAmount
// ---------------------------------------------------------------------------

Confidence Confidence::numeric(double tol) {
    if (!(tol > 0.0)) throw Error("numeric confidence needs a positive tolerance");
    return {ConfidenceKind::Numeric, tol};
}

ExtendedAmount ExtendedAmount::neg_inf(Confidence c) {
    ExtendedAmount a;
    a.kind_ = AmountKind::NegInf;
    a.confidence_ = c;
    return a;
}

ExtendedAmount ExtendedAmount::pos_inf(Confidence c) {
    ExtendedAmount a;
    a.kind_ = AmountKind::PosInf;
    a.confidence_ = c;
    return a;
}

ExtendedAmount ExtendedAmount::finite(double v, bool attained, Confidence c) {
    if (!std::isfinite(v)) throw Error("finite amount must be a finite real");
    ExtendedAmount a;
    a.kind_ = AmountKind::Finite;
    a.value_ = v;
    a.attained_ = attained;
    a.confidence_ = c;
    return a;
}

double ExtendedAmount::value() const {
    if (kind_ != AmountKind::Finite) {
        throw NotFinite("amount is not finite");
    }
    return value_;
}

bool operator<(const ExtendedAmount& a, const ExtendedAmount& b) {
    auto rank = [](const ExtendedAmount& x) {
        switch (x.kind_) {
            case AmountKind::NegInf: return -1;
            case AmountKind::Finite: return 0;
            case AmountKind::PosInf: return 1;
        }
        return 0;
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (a.kind_ == AmountKind::Finite) return a.value_ < b.value_;
    return false;
}

}  // namespace riskcap
