#include "riskcap/capital.hpp"

#include <algorithm>
#include <limits>

namespace riskcap {

namespace {

void require_bound_to(const TradedAsset& s, const Position& x) {
    require_same_space(s.payoff(), x);
}

Position position_at(const Position& x, const TradedAsset& s, double m) {
    return axpy(x, m / s.price(), s.payoff());
}

CapitalResult finite_result(const Position& x, const TradedAsset& s, double m,
                            SolveMethod method, bool attained, Confidence c) {
    CapitalResult r;
    r.amount = ExtendedAmount::finite(m, attained, c);
    r.method = method;
    r.acceptable_position = position_at(x, s, m);
    return r;
}

CapitalResult infinite_result(ExtendedAmount a, SolveMethod method) {
    CapitalResult r;
    r.amount = a;
    r.method = method;
    return r;
}

}  // namespace

CapitalResult var_sweep(const TradedAsset& s, double alpha, const Position& x) {
    require_alpha(alpha);
    require_bound_to(s, x);
    const auto& sp = *x.space();
    const Position& st = s.payoff();

    double ruin_mass = 0.0;   // P[{S_T=0} and {X<0}], unfixable by capital
    double pplus = 0.0;       // P[S_T>0]
    std::vector<std::pair<double, double>> thresholds;  // (m_w, mass)
    for (std::size_t i = 0; i < sp.size(); ++i) {
        double p = sp.prob(i);
        if (p <= 0.0) continue;
        if (st[i] > 0.0) {
            pplus += p;
            thresholds.emplace_back(-s.price() * x[i] / st[i], p);
        } else if (x[i] < 0.0) {
            ruin_mass += p;
        }
    }

    if (ruin_mass > alpha) {
        return infinite_result(ExtendedAmount::pos_inf(), SolveMethod::VarSweep);
    }
    if (ruin_mass + pplus <= alpha) {
        return infinite_result(ExtendedAmount::neg_inf(), SolveMethod::VarSweep);
    }

    // g(m) = ruin_mass + P[m_w > m] is right-continuous and non-increasing;
    // the infimum is the smallest threshold where g drops to <= alpha.
    std::sort(thresholds.begin(), thresholds.end());
    double mass_le = 0.0;
    for (std::size_t k = 0; k < thresholds.size();) {
        double t = thresholds[k].first;
        while (k < thresholds.size() && thresholds[k].first == t) {
            mass_le += thresholds[k].second;
            ++k;
        }
        if (ruin_mass + (pplus - mass_le) <= alpha) {
            return finite_result(x, s, t, SolveMethod::VarSweep, true,
                                 Confidence::exact());
        }
    }
    throw Error("var_sweep: no admissible threshold (internal error)");
}

CapitalResult tvar_solve(const TradedAsset& s, double alpha,
                         const Position& x) {
    require_alpha(alpha);
    require_bound_to(s, x);
    const auto& sp = *x.space();
    const Position& st = s.payoff();

    double z = 0.0, pplus = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.prob(i) <= 0.0) continue;
        (st[i] > 0.0 ? pplus : z) += sp.prob(i);
    }
    if (!(pplus > 0.0)) {
        throw DegenerateAsset("asset payoff is zero on every "
                              "positive-probability state");
    }

    auto h = [&](double m) { return tvar(position_at(x, s, m), alpha); };

    constexpr int kMaxDoublings = 64;
    constexpr double kTol = 1e-10;
    double hi;

    if (z >= alpha) {
        // Beyond the plateau point every S_T>0 state exceeds all S_T=0
        // values, so the alpha-tail is frozen and h is constant.
        double m_default = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sp.size(); ++i) {
            if (sp.prob(i) > 0.0 && st[i] == 0.0) {
                m_default = std::max(m_default, x[i]);
            }
        }
        double cap = 1.0 + m_default;
        double plateau = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sp.size(); ++i) {
            if (sp.prob(i) > 0.0 && st[i] > 0.0) {
                plateau = std::max(plateau, s.price() * (cap - x[i]) / st[i]);
            }
        }
        if (h(plateau) > 0.0) {
            return infinite_result(ExtendedAmount::pos_inf(),
                                   SolveMethod::TvarBisect);
        }
        hi = plateau;
    } else {
        hi = 1.0;
        int d = 0;
        while (h(hi) > 0.0) {
            if (++d > kMaxDoublings) {
                return infinite_result(
                    ExtendedAmount::pos_inf(Confidence::budget_exhausted()),
                    SolveMethod::TvarBisect);
            }
            hi *= 2.0;
        }
    }

    double lo = std::min(-1.0, hi - 1.0);
    int d = 0;
    while (h(lo) <= 0.0) {
        if (++d > kMaxDoublings) {
            return infinite_result(
                ExtendedAmount::neg_inf(Confidence::budget_exhausted()),
                SolveMethod::TvarBisect);
        }
        lo *= 2.0;
    }

    int iters = 0;
    while (hi - lo > kTol * std::max(1.0, std::abs(hi)) && iters++ < 200) {
        double mid = 0.5 * (lo + hi);
        (h(mid) <= 0.0 ? hi : lo) = mid;
    }
    // Report the acceptable end of the bracket so the returned position
    // actually satisfies the membership test.
    return finite_result(x, s, hi, SolveMethod::TvarBisect, true,
                         Confidence::numeric(kTol));
}

CapitalResult expectation_closed_form(const TradedAsset& s, double floor,
                                      const Position& x) {
    require_bound_to(s, x);
    double est = expectation(s.payoff());
    double ex = expectation(x);
    if (est > 0.0) {
        double m = s.price() * (floor - ex) / est;
        return finite_result(x, s, m, SolveMethod::ExpectationClosed, true,
                             Confidence::exact());
    }
    // Investing changes nothing in expectation.
    return infinite_result(ex >= floor ? ExtendedAmount::neg_inf()
                                       : ExtendedAmount::pos_inf(),
                           SolveMethod::ExpectationClosed);
}

CapitalResult cone_bisect(const AcceptanceSpec& a, const TradedAsset& s,
                          const Position& x, ConeBisectOptions opts) {
    require_bound_to(s, x);
    const Position& st = s.payoff();

    if (a.kind() == AcceptanceKind::PositiveCone) {
        // Pointwise cone over ALL states: exact worst-state cover.
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (st[i] > 0.0) {
                m = std::max(m, -s.price() * x[i] / st[i]);
            } else if (x[i] < 0.0) {
                return infinite_result(ExtendedAmount::pos_inf(),
                                       SolveMethod::ConeBisect);
            }
        }
        return finite_result(x, s, m, SolveMethod::ConeBisect, true,
                             Confidence::exact());
    }

    CapitalResult result;
    result.method = SolveMethod::ConeBisect;
    if (a.declared_conic()) {
        result.may_take_pos_inf = !in_interior(a, st);
        result.may_take_neg_inf = in_closure(a, scale(st, -1.0));
    }

    // Monotone membership in m; track the up-set structure to catch
    // predicates that slipped past the registration probe.
    double smallest_true = std::numeric_limits<double>::infinity();
    double largest_false = -std::numeric_limits<double>::infinity();
    auto member = [&](double m) {
        bool ok = contains(a, position_at(x, s, m));
        if (ok) {
            smallest_true = std::min(smallest_true, m);
        } else {
            largest_false = std::max(largest_false, m);
        }
        if (smallest_true < largest_false) {
            throw NonMonotonePredicate(
                "acceptability along the capital line is not an up-set");
        }
        return ok;
    };

    double hi = 1.0;
    int d = 0;
    while (!member(hi)) {
        if (++d > opts.max_doublings) {
            result.amount =
                ExtendedAmount::pos_inf(Confidence::budget_exhausted());
            return result;
        }
        hi *= 2.0;
    }
    double lo = -1.0;
    d = 0;
    while (member(lo)) {
        if (++d > opts.max_doublings) {
            result.amount =
                ExtendedAmount::neg_inf(Confidence::budget_exhausted());
            return result;
        }
        lo *= 2.0;
    }

    int iters = 0;
    while (hi - lo > opts.rel_tolerance * std::max(1.0, std::abs(hi)) &&
           iters++ < 200) {
        double mid = 0.5 * (lo + hi);
        (member(mid) ? hi : lo) = mid;
    }
    bool attained = a.declared_closed();
    result.amount = ExtendedAmount::finite(
        hi, attained, Confidence::numeric(opts.rel_tolerance));
    result.acceptable_position = position_at(x, s, hi);
    return result;
}

CapitalResult required_capital(const AcceptanceSpec& a, const TradedAsset& s,
                               const Position& x) {
    switch (a.kind()) {
        case AcceptanceKind::VaR:
            return var_sweep(s, a.alpha(), x);
        case AcceptanceKind::TVaR:
            return tvar_solve(s, a.alpha(), x);
        case AcceptanceKind::Expectation:
            return expectation_closed_form(s, a.floor(), x);
        case AcceptanceKind::PositiveCone:
        case AcceptanceKind::CustomCone:
            return cone_bisect(a, s, x);
    }
    throw Error("unknown acceptance kind");
}

}  // namespace riskcap
