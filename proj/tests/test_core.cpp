#include <doctest.h>

#include "helpers.hpp"

using namespace riskcap;
using namespace riskcap::testing;

TEST_CASE("scenario space validation") {
    CHECK_THROWS_AS(build_space({}, {}), EmptySpace);
    CHECK_THROWS_AS(build_space({"a", "b"}, {0.5, -0.5}), NegativeProbability);
    CHECK_THROWS_AS(build_space({"a", "b"}, {0.6, 0.6}),
                    ProbabilitySumMismatch);
    CHECK_THROWS_AS(build_space({"a", "a"}, {0.5, 0.5}), DuplicateLabel);
    CHECK_THROWS_AS(build_space({"a"}, {0.5, 0.5}), Error);
}

TEST_CASE("probabilities renormalize exactly") {
    // Off by less than 1e-12: accepted and snapped to total mass 1.
    auto sp = build_space({"a", "b", "c"},
                          {0.1, 0.2, 0.7 + 4e-13});
    CHECK(close(sp->total_mass(), 1.0, 1e-15));

    CHECK_THROWS_AS(build_space({"a", "b"}, {0.5, 0.5 + 1e-9}),
                    ProbabilitySumMismatch);
}

TEST_CASE("zero-probability states are retained, not erased") {
    auto sp = build_space({"a", "b", "c"}, {0.5, 0.0, 0.5});
    CHECK(sp->size() == 3);
    Position x(sp, {1.0, -7.0, 1.0});
    CHECK(expectation(x) == 1.0);   // null state ignored in P[.]
    CHECK(sup_norm(x) == 7.0);      // but visible to the sup norm
}

TEST_CASE("position arithmetic") {
    auto sp = three_state_space();
    Position x(sp, {1.0, 2.0, 3.0});
    Position y(sp, {0.5, -1.0, 0.0});
    CHECK(add(x, y).values() == std::vector<double>{1.5, 1.0, 3.0});
    CHECK(sub(x, y).values() == std::vector<double>{0.5, 3.0, 3.0});
    CHECK(scale(y, -2.0).values() == std::vector<double>{-1.0, 2.0, 0.0});
    CHECK(axpy(x, 2.0, y).values() == std::vector<double>{2.0, 0.0, 3.0});
    CHECK(indicator(sp, 2).values() == std::vector<double>{0.0, 0.0, 1.0});
    CHECK(constant_position(sp, 4.0).values() ==
          std::vector<double>{4.0, 4.0, 4.0});

    auto other = build_space({"a"}, {1.0});
    CHECK_THROWS_AS(add(x, Position(other, {1.0})), UnboundPosition);
    CHECK_THROWS_AS(sup_norm(Position{}), UnboundPosition);
}

TEST_CASE("traded asset validation and default flag") {
    auto sp = build_space({"a", "b", "c"}, {0.5, 0.0, 0.5});
    CHECK_THROWS_AS(TradedAsset(0.0, Position(sp, {1, 1, 1})),
                    NonPositivePrice);
    CHECK_THROWS_AS(TradedAsset(-1.0, Position(sp, {1, 1, 1})),
                    NonPositivePrice);
    CHECK_THROWS_AS(TradedAsset(1.0, Position(sp, {1, -1, 1})),
                    NegativePayoff);
    CHECK_THROWS_AS(TradedAsset(1.0, Position(sp, {0, 0, 0})), ZeroPayoff);

    CHECK(TradedAsset(1.0, Position(sp, {0, 1, 1})).defaultable());
    // Zero payoff only on the null state: no default risk under P.
    CHECK_FALSE(TradedAsset(1.0, Position(sp, {1, 0, 1})).defaultable());

    auto bond = risk_free_bond(sp);
    CHECK(bond.price() == 1.0);
    CHECK(bond.payoff().values() == std::vector<double>{1.0, 1.0, 1.0});
    CHECK_FALSE(bond.defaultable());
}

TEST_CASE("extended amounts") {
    auto lo = ExtendedAmount::neg_inf();
    auto hi = ExtendedAmount::pos_inf();
    auto v = ExtendedAmount::finite(2.0, true);

    CHECK(lo < v);
    CHECK(v < hi);
    CHECK(lo < hi);
    CHECK_FALSE(hi < hi);
    CHECK(ExtendedAmount::finite(1.0, false) < v);

    CHECK(v.attained());
    CHECK_FALSE(lo.attained());
    CHECK_FALSE(hi.attained());
    CHECK(v.value() == 2.0);
    CHECK_THROWS_AS(lo.value(), NotFinite);
    CHECK_THROWS_AS(hi.value(), NotFinite);

    CHECK(v.confidence().kind == ConfidenceKind::Exact);
    auto n = ExtendedAmount::finite(0.0, false, Confidence::numeric(1e-8));
    CHECK(n.confidence().kind == ConfidenceKind::Numeric);
    CHECK(n.confidence().tolerance == 1e-8);
}
