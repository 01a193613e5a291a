#include "riskcap/acceptance.hpp"

#include <algorithm>
#include <random>

namespace riskcap {

namespace {

constexpr double kEpsGrid[] = {1.0,  1e-1, 1e-2, 1e-3, 1e-4,
                               1e-5, 1e-6, 1e-7, 1e-8};

double prob_strictly_negative(const Position& x) {
    const auto& sp = *x.space();
    double p = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) > 0.0 && x[i] < 0.0) p += sp.prob(i);
    }
    return p;
}

double min_over_all_states(const Position& x) {
    double m = x[0];
    for (double v : x.values()) m = std::min(m, v);
    return m;
}

}  // namespace

AcceptanceSpec AcceptanceSpec::var(double alpha) {
    require_alpha(alpha);
    AcceptanceSpec a;
    a.kind_ = AcceptanceKind::VaR;
    a.alpha_ = alpha;
    return a;
}

AcceptanceSpec AcceptanceSpec::tvar(double alpha) {
    require_alpha(alpha);
    AcceptanceSpec a;
    a.kind_ = AcceptanceKind::TVaR;
    a.alpha_ = alpha;
    return a;
}

AcceptanceSpec AcceptanceSpec::expectation(double floor) {
    AcceptanceSpec a;
    a.kind_ = AcceptanceKind::Expectation;
    a.floor_ = floor;
    return a;
}

AcceptanceSpec AcceptanceSpec::positive_cone() {
    AcceptanceSpec a;
    a.kind_ = AcceptanceKind::PositiveCone;
    return a;
}

AcceptanceSpec AcceptanceSpec::custom_cone(Predicate pred, ConeFlags flags,
                                           const SpacePtr& space,
                                           unsigned seed, int probe_samples) {
    if (!pred) throw Error("custom cone needs a predicate");

    // Monotonicity probe: accepted X plus a nonnegative bump must stay in.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    std::uniform_real_distribution<double> bump(0.0, 5.0);
    for (int t = 0; t < probe_samples; ++t) {
        std::vector<double> xv(space->size()), yv(space->size());
        for (std::size_t i = 0; i < space->size(); ++i) {
            xv[i] = unit(rng);
            yv[i] = xv[i] + bump(rng);
        }
        Position x(space, std::move(xv));
        Position y(space, std::move(yv));
        if (pred(x) && !pred(y)) {
            throw NonMonotonePredicate(
                "custom predicate rejected a dominating position");
        }
    }

    AcceptanceSpec a;
    a.kind_ = AcceptanceKind::CustomCone;
    a.predicate_ = std::move(pred);
    a.flags_ = flags;
    return a;
}

bool AcceptanceSpec::declared_closed() const {
    if (kind_ == AcceptanceKind::CustomCone) return flags_.closed;
    return true;  // all built-ins are closed sets
}

bool AcceptanceSpec::declared_conic() const {
    switch (kind_) {
        case AcceptanceKind::VaR:
        case AcceptanceKind::PositiveCone:
        case AcceptanceKind::TVaR:
            return true;
        case AcceptanceKind::Expectation:
            return floor_ == 0.0;
        case AcceptanceKind::CustomCone:
            return flags_.conic;
    }
    return false;
}

bool AcceptanceSpec::declared_convex() const {
    switch (kind_) {
        case AcceptanceKind::TVaR:
        case AcceptanceKind::Expectation:
        case AcceptanceKind::PositiveCone:
            return true;
        case AcceptanceKind::VaR:
            return false;
        case AcceptanceKind::CustomCone:
            return flags_.convex;
    }
    return false;
}

std::string AcceptanceSpec::name() const {
    switch (kind_) {
        case AcceptanceKind::VaR:
            return "var(" + std::to_string(alpha_) + ")";
        case AcceptanceKind::TVaR:
            return "tvar(" + std::to_string(alpha_) + ")";
        case AcceptanceKind::Expectation:
            return "expectation(" + std::to_string(floor_) + ")";
        case AcceptanceKind::PositiveCone:
            return "positive-cone";
        case AcceptanceKind::CustomCone:
            return "custom-cone";
    }
    return "?";
}

bool contains(const AcceptanceSpec& a, const Position& x) {
    require_bound(x);
    switch (a.kind_) {
        case AcceptanceKind::VaR:
            return prob_strictly_negative(x) <= a.alpha_;
        case AcceptanceKind::TVaR:
            return tvar(x, a.alpha_) <= 0.0;
        case AcceptanceKind::Expectation:
            return expectation(x) >= a.floor_;
        case AcceptanceKind::PositiveCone:
            return min_over_all_states(x) >= 0.0;
        case AcceptanceKind::CustomCone:
            return a.predicate_(x);
    }
    return false;
}

bool in_interior(const AcceptanceSpec& a, const Position& x) {
    require_bound(x);
    switch (a.kind_) {
        case AcceptanceKind::VaR:
            return var(x, a.alpha_) < 0.0;
        case AcceptanceKind::TVaR:
            return tvar(x, a.alpha_) < 0.0;
        case AcceptanceKind::Expectation:
            return expectation(x) > a.floor_;
        case AcceptanceKind::PositiveCone:
            return min_over_all_states(x) > 0.0;
        case AcceptanceKind::CustomCone:
            for (double eps : kEpsGrid) {
                if (a.predicate_(axpy(x, -eps,
                                      constant_position(x.space(), 1.0)))) {
                    return true;
                }
            }
            return false;
    }
    return false;
}

bool in_closure(const AcceptanceSpec& a, const Position& x) {
    require_bound(x);
    if (a.kind_ != AcceptanceKind::CustomCone || a.declared_closed()) {
        return contains(a, x);
    }
    if (a.predicate_(x)) return true;
    for (double eps : kEpsGrid) {
        if (a.predicate_(axpy(x, eps, constant_position(x.space(), 1.0)))) {
            return true;
        }
    }
    return false;
}

}  // namespace riskcap
