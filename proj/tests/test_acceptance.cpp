#include <doctest.h>

#include "helpers.hpp"
#include "riskcap/acceptance.hpp"

using namespace riskcap;
using namespace riskcap::testing;

TEST_CASE("var acceptance: ruin probability at most alpha") {
    auto sp = three_state_space();
    auto a = AcceptanceSpec::var(0.1);
    CHECK(contains(a, pos(sp, {-1, 0, 1})));        // P[X<0] = 0.05
    CHECK(contains(a, pos(sp, {0, -1, 1})));        // 0.06
    CHECK_FALSE(contains(a, pos(sp, {-1, -1, 1}))); // 0.11
    CHECK_FALSE(contains(a, pos(sp, {0, 0, -1})));  // 0.89
}

TEST_CASE("interior is the strict test, closure equals membership") {
    auto sp = three_state_space();
    for (auto a : {AcceptanceSpec::var(0.1), AcceptanceSpec::tvar(0.1),
                   AcceptanceSpec::expectation(0.0),
                   AcceptanceSpec::positive_cone()}) {
        Position boundary = pos(sp, {0, 0, 0});
        CHECK(contains(a, boundary));
        CHECK(in_closure(a, boundary));
        CHECK_FALSE(in_interior(a, boundary));
        Position inside = pos(sp, {1, 1, 1});
        CHECK(in_interior(a, inside));
    }
    // VaR: interior tolerates alpha mass at exactly zero but not below.
    auto v = AcceptanceSpec::var(0.1);
    CHECK(in_interior(v, pos(sp, {-1, 1, 1})));       // P[X<=0] = 0.05
    CHECK_FALSE(in_interior(v, pos(sp, {-1, -1, 1})));
}

TEST_CASE("declared structure flags") {
    auto v = AcceptanceSpec::var(0.2);
    CHECK(v.declared_closed());
    CHECK(v.declared_conic());
    CHECK_FALSE(v.declared_convex());

    auto t = AcceptanceSpec::tvar(0.2);
    CHECK(t.declared_closed());
    CHECK(t.declared_conic());
    CHECK(t.declared_convex());

    CHECK(AcceptanceSpec::expectation(0.0).declared_conic());
    CHECK_FALSE(AcceptanceSpec::expectation(0.5).declared_conic());
    CHECK(AcceptanceSpec::expectation(0.5).declared_convex());

    auto p = AcceptanceSpec::positive_cone();
    CHECK(p.declared_closed());
    CHECK(p.declared_conic());
    CHECK(p.declared_convex());
}

TEST_CASE("acceptance sets are monotone") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        auto sp = sampling::random_space(rng, 2 + t % 8);
        Position x = sampling::random_position(rng, sp);
        std::uniform_real_distribution<double> bump(0.0, 2.0);
        std::vector<double> up(sp->size());
        for (std::size_t i = 0; i < sp->size(); ++i) up[i] = x[i] + bump(rng);
        Position y(sp, std::move(up));

        double alpha = sampling::random_alpha(rng);
        for (auto a : {AcceptanceSpec::var(alpha), AcceptanceSpec::tvar(alpha),
                       AcceptanceSpec::expectation(0.3),
                       AcceptanceSpec::positive_cone()}) {
            if (contains(a, x)) CHECK(contains(a, y));
        }
    }
}

TEST_CASE("tvar acceptance is convex, var is not") {
    auto t = AcceptanceSpec::tvar(0.1);
    std::mt19937_64 rng(19);
    for (int k = 0; k < 300; ++k) {
        auto sp = sampling::random_space(rng, 2 + k % 8);
        Position x = sampling::random_position(rng, sp);
        Position y = sampling::random_position(rng, sp);
        if (contains(t, x) && contains(t, y)) {
            CHECK(contains(t, scale(add(x, y), 0.5)));
        }
    }

    // Classic failure of convexity for VaR: two disjoint small-mass losses.
    auto sp = build_space({"a", "b", "c"}, {0.08, 0.08, 0.84});
    auto v = AcceptanceSpec::var(0.1);
    Position x = pos(sp, {-3, 1, 1});
    Position y = pos(sp, {1, -3, 1});
    CHECK(contains(v, x));
    CHECK(contains(v, y));
    CHECK_FALSE(contains(v, scale(add(x, y), 0.5)));
}

TEST_CASE("custom cone registration probes monotonicity") {
    auto sp = three_state_space();
    ConeFlags flags{true, true, true};

    // Monotone halfspace: fine.
    auto half = [](const Position& x) {
        return 0.2 * x[0] + 0.3 * x[1] + 0.5 * x[2] >= 0.0;
    };
    CHECK_NOTHROW(AcceptanceSpec::custom_cone(half, flags, sp));

    // Anti-monotone predicate: rejected at registration.
    auto bad = [](const Position& x) { return x[0] <= 0.0; };
    CHECK_THROWS_AS(AcceptanceSpec::custom_cone(bad, flags, sp),
                    NonMonotonePredicate);

    CHECK_THROWS_AS(AcceptanceSpec::custom_cone(nullptr, flags, sp), Error);
}

TEST_CASE("custom cone closure and interior probes") {
    auto sp = three_state_space();
    // Open cone {min > 0}, declared not closed.
    auto open_pred = [](const Position& x) {
        for (double v : x.values()) {
            if (!(v > 0.0)) return false;
        }
        return true;
    };
    auto open_cone = AcceptanceSpec::custom_cone(
        open_pred, ConeFlags{false, true, true}, sp);

    Position origin = pos(sp, {0, 0, 0});
    CHECK_FALSE(contains(open_cone, origin));
    CHECK(in_closure(open_cone, origin));   // origin + eps*1 is inside
    CHECK_FALSE(in_interior(open_cone, origin));
    CHECK(in_interior(open_cone, pos(sp, {1, 1, 1})));
    CHECK_FALSE(in_closure(open_cone, pos(sp, {-1, 1, 1})));
}
