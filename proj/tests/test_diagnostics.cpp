#include <doctest.h>

#include "helpers.hpp"
#include "riskcap/diagnostics.hpp"

using namespace riskcap;
using namespace riskcap::testing;

TEST_CASE("var finiteness on the three-state fixture") {
    auto sp = three_state_space();
    auto bond = defaultable_bond(sp);

    auto r = var_finiteness(bond, 0.1);
    CHECK(r.never_pos_inf);   // P[S_T=0] = 0.05 <= 0.1
    CHECK(r.never_neg_inf);   // P[S_T>0] = 0.95 > 0.1
    CHECK(r.finite_everywhere);
    CHECK_FALSE(r.pos_inf_witness);
    CHECK_FALSE(r.neg_inf_witness);

    // Shrink alpha below the default mass: +inf becomes reachable.
    auto r2 = var_finiteness(bond, 0.04);
    CHECK_FALSE(r2.never_pos_inf);
    REQUIRE(r2.pos_inf_witness);
    CHECK(required_capital(AcceptanceSpec::var(0.04), bond,
                           *r2.pos_inf_witness)
              .amount.is_pos_inf());

    // Raise alpha above P[S_T>0]: -inf becomes reachable.
    auto sp2 = build_space({"w1", "w2"}, {0.95, 0.05});
    auto bond2 = TradedAsset(1.0, Position(sp2, {0.0, 1.0}));
    auto r3 = var_finiteness(bond2, 0.1);
    CHECK_FALSE(r3.never_neg_inf);
    REQUIRE(r3.neg_inf_witness);
    CHECK(required_capital(AcceptanceSpec::var(0.1), bond2,
                           *r3.neg_inf_witness)
              .amount.is_neg_inf());
}

TEST_CASE("tvar finiteness and lipschitz bound") {
    auto sp = three_state_space();
    auto bond = defaultable_bond(sp);

    auto r = tvar_finiteness(bond, 0.1);
    CHECK(r.finite_everywhere);
    REQUIRE(r.lipschitz_bound);
    // tvar(S_T, 0.1) = -(0.05*0 + 0.05*1)/0.1 = -0.5
    CHECK(close(*r.lipschitz_bound, 1.0 / 0.5, 1e-12));
    CHECK(close(tvar_lipschitz_bound(bond, 0.1), 2.0, 1e-12));

    // Default mass at or above alpha: +inf possible (strict threshold).
    auto r2 = tvar_finiteness(bond, 0.05);
    CHECK_FALSE(r2.never_pos_inf);
    REQUIRE(r2.pos_inf_witness);
    CHECK(required_capital(AcceptanceSpec::tvar(0.05), bond,
                           *r2.pos_inf_witness)
              .amount.is_pos_inf());
    CHECK_THROWS_AS(tvar_lipschitz_bound(bond, 0.05), NotFinite);

    // Almost-surely-zero payoff: the measure is identically -inf-prone.
    auto spz = build_space({"a", "b"}, {0.0, 1.0});
    auto dead = TradedAsset(1.0, Position(spz, {1.0, 0.0}));
    auto r3 = tvar_finiteness(dead, 0.1);
    CHECK_FALSE(r3.never_neg_inf);
    CHECK(r3.neg_inf_witness);
}

TEST_CASE("conic finiteness") {
    auto sp = three_state_space();
    auto cone = AcceptanceSpec::positive_cone();

    // Defaultable payoff is never interior to the positive cone.
    auto r = conic_finiteness(cone, defaultable_bond(sp));
    CHECK_FALSE(r.never_pos_inf);
    CHECK(r.never_neg_inf);  // coherent: interior failure already seen
    REQUIRE(r.pos_inf_witness);
    CHECK(required_capital(cone, defaultable_bond(sp), *r.pos_inf_witness)
              .amount.is_pos_inf());

    // Strictly positive payoff: interior, hence finite everywhere.
    auto solid = risk_free_bond(sp);
    auto r2 = conic_finiteness(cone, solid);
    CHECK(r2.finite_everywhere);

    CHECK_THROWS_AS(conic_finiteness(AcceptanceSpec::expectation(0.5),
                                     defaultable_bond(sp)),
                    NotConic);
}

TEST_CASE("pointwise continuity reproduces the discontinuity example") {
    auto sp = three_state_space();
    auto bond = defaultable_bond(sp);

    auto r = var_pointwise_continuity(bond, 0.1, indicator(sp, 2));
    CHECK(r.lsc);
    CHECK_FALSE(r.usc);
    CHECK_FALSE(r.continuous);
    REQUIRE(r.witness);
    CHECK(r.witness->gap == doctest::Approx(1.0).epsilon(1e-12));

    // The same position under the risk-free bond is perfectly continuous.
    auto ok = var_pointwise_continuity(risk_free_bond(sp), 0.1,
                                       indicator(sp, 2));
    CHECK(ok.continuous);
    CHECK_FALSE(ok.witness);
}

TEST_CASE("subset sum window search") {
    std::vector<double> probs = {0.05, 0.06, 0.89};
    auto hit = subset_sum_in_window(probs, 0.05, 0.1);
    REQUIRE(hit);
    CHECK(*hit == 0b010);  // {0.06} is the only subset in (0.05, 0.1]

    CHECK_FALSE(subset_sum_in_window(probs, 0.11, 0.8));
    CHECK(subset_sum_in_window(probs, 0.10, 0.11));   // 0.05+0.06
    // Endpoint semantics: strict below, inclusive above.
    CHECK_FALSE(subset_sum_in_window({0.5, 0.5}, 0.5, 0.99));
    CHECK(subset_sum_in_window({0.5, 0.5}, 0.49, 0.5));
}

TEST_CASE("subset sum agrees with exhaustive enumeration") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + t % 14;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> probs(n);
        double sum = 0.0;
        for (double& p : probs) sum += (p = u(rng));
        for (double& p : probs) p /= sum;
        double lo = u(rng), hi = lo + 0.2 * u(rng);

        bool brute = false;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) s += probs[i];
            }
            if (s > lo + 1e-12 && s <= hi + 1e-12) {
                brute = true;
                break;
            }
        }
        auto fast = subset_sum_in_window(probs, lo, hi);
        CHECK(fast.has_value() == brute);
        if (fast) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (*fast >> i & 1) s += probs[i];
            }
            CHECK(s > lo);
            CHECK(s <= hi + 1e-12);
        }
    }
}

TEST_CASE("global continuity characterization on the fixture") {
    auto sp = three_state_space();
    auto bond = defaultable_bond(sp);

    auto r = var_global_continuity(bond, 0.1);
    CHECK_FALSE(r.continuous);
    REQUIRE(r.witness);
    CHECK(r.witness->description.find("w2") != std::string::npos);
    CHECK(r.witness->description.find("w3") == std::string::npos);
    CHECK(r.witness->gap > 1e-6);

    // The risk-free bond has z = 0 and no subset in the empty window
    // (alpha - 0, alpha] can be hit ... unless one lands exactly on alpha.
    auto solid = risk_free_bond(sp);
    auto r2 = var_global_continuity(solid, 0.2);
    CHECK(r2.continuous);

    // Degenerate capital regimes are rejected up front.
    auto sp2 = build_space({"w1", "w2"}, {0.95, 0.05});
    auto bond2 = TradedAsset(1.0, Position(sp2, {0.0, 1.0}));
    CHECK_THROWS_AS(var_global_continuity(bond2, 0.1), NotFinite);
}

TEST_CASE("too many states for the subset search") {
    std::size_t n = 46;
    std::vector<std::string> labels(n);
    std::vector<double> probs(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) labels[i] = "s" + std::to_string(i);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) acc += probs[i];
    probs[n - 1] = 1.0 - acc;
    auto sp = build_space(labels, probs);
    auto bond = risk_free_bond(sp);
    CHECK_THROWS_AS(var_global_continuity(bond, 0.5), TooManyStates);
}

TEST_CASE("semicontinuity probe extrapolates away linear decay") {
    auto sp = three_state_space();
    auto bond = defaultable_bond(sp);

    // Discontinuous case: gap survives the extrapolation.
    auto r = semicontinuity_probe(AcceptanceSpec::var(0.1), bond,
                                  indicator(sp, 2));
    CHECK(r.lsc);
    CHECK_FALSE(r.usc);
    REQUIRE(r.witness);
    CHECK(r.witness->gap == doctest::Approx(1.0).epsilon(1e-9));

    // Continuous case: the 1/n transient must extrapolate to zero.
    auto ok = semicontinuity_probe(AcceptanceSpec::var(0.1),
                                   risk_free_bond(sp), indicator(sp, 2));
    CHECK(ok.continuous);

    auto sp2 = build_space({"w1", "w2"}, {0.95, 0.05});
    auto bond2 = TradedAsset(1.0, Position(sp2, {0.0, 1.0}));
    CHECK_THROWS_AS(
        semicontinuity_probe(AcceptanceSpec::var(0.1), bond2,
                             constant_position(sp2, 0.0)),
        NotFinite);
}

TEST_CASE("global verdicts match exhaustive sweeps on random fixtures") {
    std::mt19937_64 rng(53);
    int discontinuous = 0;
    std::uniform_real_distribution<double> pay(0.2, 2.0);
    std::uniform_real_distribution<double> price(0.5, 2.0);
    std::bernoulli_distribution defaults(0.3);
    for (int t = 0; t < 100; ++t) {
        auto sp = sampling::random_space(rng, 3 + t % 9);
        // Positive payoffs bounded within a 10x band keep the witness
        // sequences exactly affine in 1/n by n = 32, so the probe's
        // extrapolated gap is the true jump.
        std::vector<double> pv(sp->size());
        bool any = false;
        for (double& v : pv) any |= ((v = defaults(rng) ? 0.0 : pay(rng)) > 0);
        if (!any) continue;
        TradedAsset s(price(rng), Position(sp, std::move(pv)));
        double alpha = sampling::random_alpha(rng, 0.1, 0.4);

        auto fin = var_finiteness(s, alpha);
        if (!fin.finite_everywhere) continue;

        double z = 0.0;
        std::vector<double> probs;
        for (std::size_t i = 0; i < sp->size(); ++i) {
            if (sp->prob(i) <= 0.0) continue;
            if (s.payoff()[i] > 0.0) {
                probs.push_back(sp->prob(i));
            } else {
                z += sp->prob(i);
            }
        }
        bool brute = false;
        for (std::uint64_t mask = 1;
             mask < (std::uint64_t{1} << probs.size()); ++mask) {
            double sum = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                if (mask >> i & 1) sum += probs[i];
            }
            if (sum > alpha - z + 1e-12 && sum <= alpha + 1e-12) {
                brute = true;
                break;
            }
        }

        auto r = var_global_continuity(s, alpha);
        CHECK(r.continuous == !brute);
        if (!r.continuous) {
            ++discontinuous;
            REQUIRE(r.witness);
            CHECK(r.witness->gap > 1e-6);
        }
    }
    CHECK(discontinuous > 3);  // the sampler must exercise both verdicts
}

TEST_CASE("refinement demo rows behave as documented") {
    auto rows = nonatomic_refinement_demo(4, 6);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.states == (std::size_t{1} << row.k));
        CHECK(row.gap_bounded == 0.0);
        CHECK(row.gap_defaultable >= 0.5);
    }
}
