#include "riskcap/optimality.hpp"

#include <cmath>
#include <random>

namespace riskcap {

namespace {

constexpr double kMargin = 1e-8;

// -1 if a < b - tol, +1 if a > b + tol, 0 otherwise (extended order).
int cmp_with_margin(const ExtendedAmount& a, const ExtendedAmount& b,
                    double tol) {
    if (a.kind() == b.kind()) {
        if (!a.is_finite()) return 0;
        double d = a.value() - b.value();
        if (d < -tol) return -1;
        if (d > tol) return 1;
        return 0;
    }
    return a < b ? -1 : 1;
}

std::vector<double> lambda_grid() {
    std::vector<double> g;
    for (int k = -6; k <= 6; ++k) {
        double v = std::pow(10.0, k);
        g.push_back(v);
        g.push_back(-v);
    }
    return g;
}

}  // namespace

AssetPair::AssetPair(TradedAsset s, TradedAsset r)
    : s_(std::move(s)), r_(std::move(r)) {
    require_same_space(s_.payoff(), r_.payoff());
    if (s_.price() != r_.price()) {
        throw Error("asset pair requires equal initial prices");
    }
}

Position leveraged_payoff(const AssetPair& pair, double m, double lambda) {
    Position base = scale(pair.s().payoff(), m / pair.price());
    return axpy(base, lambda, sub(pair.r().payoff(), pair.s().payoff()));
}

Verdict no_leverage_check(const AcceptanceSpec& a, const AssetPair& pair,
                          long budget, unsigned seed) {
    auto base = required_capital(a, pair.s(), constant_position(
                                                  pair.s().space(), 0.0));
    if (!base.amount.is_finite()) {
        throw NotFinite("rho_{A,S}(0) is not finite");
    }
    double rho0 = base.amount.value();

    Verdict v;
    v.seed = seed;
    if (sup_norm(sub(pair.r().payoff(), pair.s().payoff())) == 0.0) {
        v.note = "identical payoffs: leverage line is a single point";
        return v;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw(-100.0, 100.0);
    std::vector<double> lambdas = lambda_grid();
    for (long i = 0; i < budget; ++i) lambdas.push_back(draw(rng));

    for (double lambda : lambdas) {
        if (lambda == 0.0) continue;
        ++v.trials;
        Position p = leveraged_payoff(pair, rho0, lambda);
        if (in_closure(a, p)) {
            v.status = VerdictStatus::Refuted;
            v.witness = std::move(p);
            v.witness_lambda = lambda;
            v.note = "fully-leveraged position is acceptable";
            return v;
        }
    }
    v.note = "no acceptable leverage found within budget";
    return v;
}

namespace {

/// Deterministic candidate stream shared by the refutation searches:
/// state indicators, the payoffs themselves, translation escapes along
/// R_T - S_T from accepted candidates, then random boxes.
class CandidateStream {
public:
    CandidateStream(const AssetPair& pair, long budget, unsigned seed)
        : pair_(pair), budget_(budget), rng_(seed) {
        const auto& space = pair.s().space();
        for (std::size_t i = 0; i < space->size(); ++i) {
            structured_.push_back(indicator(space, i));
            structured_.push_back(scale(indicator(space, i), -1.0));
        }
        structured_.push_back(scale(pair.s().payoff(), -1.0));
        structured_.push_back(scale(pair.r().payoff(), -1.0));
        scale_ = std::max({1.0, sup_norm(pair.s().payoff()),
                           sup_norm(pair.r().payoff())});
    }

    std::optional<Position> next() {
        if (idx_ < structured_.size()) return structured_[idx_++];
        if (emitted_random_ >= budget_) return std::nullopt;
        ++emitted_random_;
        const auto& space = pair_.s().space();
        std::uniform_real_distribution<double> box(-5.0 * scale_,
                                                   5.0 * scale_);
        std::vector<double> v(space->size());
        for (double& x : v) x = box(rng_);
        return Position(space, std::move(v));
    }

    /// Translates of a position along the zero-cost leg.
    std::vector<Position> escapes(const Position& x) {
        std::vector<Position> out;
        Position leg = sub(pair_.r().payoff(), pair_.s().payoff());
        if (sup_norm(leg) == 0.0) return out;
        for (double lambda : lambda_grid()) {
            out.push_back(axpy(x, lambda, leg));
        }
        return out;
    }

private:
    const AssetPair& pair_;
    long budget_;
    std::mt19937_64 rng_;
    std::vector<Position> structured_;
    std::size_t idx_ = 0;
    long emitted_random_ = 0;
    double scale_ = 1.0;
};

}  // namespace

Verdict equality_check(const AcceptanceSpec& a, const AcceptanceSpec& b,
                       const AssetPair& pair, long budget, unsigned seed) {
    Verdict v;
    v.seed = seed;

    auto confirm = [&](const Position& x) {
        auto ra = required_capital(a, pair.s(), x);
        auto rb = required_capital(b, pair.r(), x);
        return cmp_with_margin(ra.amount, rb.amount, kMargin) != 0;
    };

    CandidateStream stream(pair, budget, seed);
    while (auto x = stream.next()) {
        ++v.trials;
        if (confirm(*x)) {
            v.status = VerdictStatus::Refuted;
            v.witness = std::move(*x);
            v.note = "capital requirements differ at witness";
            return v;
        }
        // Closure mismatch and translation escapes suggest witnesses near
        // the boundary; each suggestion is still confirmed by evaluation.
        if (in_closure(a, *x) != in_closure(b, *x)) {
            if (confirm(*x)) {
                v.status = VerdictStatus::Refuted;
                v.witness = std::move(*x);
                v.note = "closure mismatch confirmed by evaluation";
                return v;
            }
        }
        if (in_closure(a, *x)) {
            for (auto& y : stream.escapes(*x)) {
                if (!in_closure(a, y) && confirm(y)) {
                    v.status = VerdictStatus::Refuted;
                    v.witness = std::move(y);
                    v.note = "translation escape confirmed by evaluation";
                    return v;
                }
            }
        }
    }
    v.note = "no difference found within budget";
    return v;
}

DominanceResult dominance_refute(const AcceptanceSpec& a,
                                 const AssetPair& pair, long budget,
                                 unsigned seed) {
    DominanceResult result;
    result.seed = seed;

    std::optional<Position> low, high;
    auto classify = [&](const Position& x) {
        auto rs = required_capital(a, pair.s(), x);
        auto rr = required_capital(a, pair.r(), x);
        int c = cmp_with_margin(rs.amount, rr.amount, kMargin);
        if (c < 0 && !low) low = x;
        if (c > 0 && !high) high = x;
    };

    CandidateStream stream(pair, budget, seed);
    while (auto x = stream.next()) {
        ++result.trials;
        classify(*x);
        if (low && high) break;
        if (in_closure(a, *x)) {
            for (auto& y : stream.escapes(*x)) {
                classify(y);
                if (low && high) break;
            }
        }
        if (low && high) break;
    }

    if (low && high) {
        result.witnesses = DominanceWitnesses{std::move(*low),
                                              std::move(*high)};
    } else {
        result.equality = equality_check(a, a, pair, budget, seed);
    }
    return result;
}

}  // namespace riskcap
