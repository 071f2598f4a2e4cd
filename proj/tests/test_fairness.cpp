#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rentdiv/fairness.hpp"
#include "rentdiv/fixtures.hpp"
#include "support.hpp"

using namespace rentdiv;
using testing_support::prices;

namespace {

// The negotiated family in the strong-negotiation example, scaled by 2 so
// that x = 1.5 stays integral: entries are (99+x, 1-x | 1-x, 99+x).
PriceMatrix family(Money x) {
    PriceMatrix p;
    p.p = {{99 + x, 1 - x}, {1 - x, 99 + x}};
    return p;
}

Solution family_solution(Money x) { return {{Assignment::identity(2, 2), family(x)}, 0}; }

}  // namespace

TEST_CASE("individual envy-freeness") {
    const auto e1 = fixtures::example_two_apartments();
    const auto id = Assignment::identity(2, 2);
    CHECK(check_individually_ef(e1, {id, prices({{150, 150}, {150, 150}})}));
    CHECK(check_individually_ef(fixtures::strong_negotiation_example(), {id, prices({{50, 50}, {50, 50}})}));
    auto v = check_individually_ef(e1, {id, prices({{300, 0}, {150, 150}})});
    CHECK(!v);
    REQUIRE(v.violation);
    CHECK(*v.violation == EnvyViolation{0, 1, 0});
}

TEST_CASE("consensus apartments") {
    const auto e1 = fixtures::example_two_apartments();
    const auto id = Assignment::identity(2, 2);
    CHECK(consensus_apartments(e1, {id, prices({{150, 150}, {150, 150}})}).empty());
    CHECK(consensus_apartments(e1, {id, prices({{200, 100}, {100, 200}})}) == std::vector<std::size_t>{0, 1});
    const auto one = e1.select_apartments({0});
    CHECK(consensus_apartments(one, {Assignment::identity(2, 1), prices({{7, 293}})}) ==
          std::vector<std::size_t>{0});
}

TEST_CASE("universal envy-freeness") {
    const auto e1 = fixtures::example_two_apartments();
    const auto id = Assignment::identity(2, 2);
    for (std::size_t chosen : {0, 1}) {
        CHECK(!check_uef(e1, {{id, prices({{150, 150}, {150, 150}})}, chosen}));
        CHECK(!check_uef(e1, {{id, prices({{200, 100}, {100, 200}})}, chosen}));
        CHECK(!check_uef(e1, {{id, prices({{250, 50}, {50, 250}})}, chosen}));
    }
    Instance single({{{Money(4)}, {Money(9)}}}, {Money(1), Money(2)});
    CHECK(check_uef(single, {{Assignment::identity(1, 2), prices({{1}, {2}})}, 1}));

    // Identical apartments, every player gets a favourite room.
    Instance twin({{{Money(2), Money(0)}, {Money(2), Money(0)}}, {{Money(0), Money(2)}, {Money(0), Money(2)}}},
                  {Money(2), Money(2)});
    CHECK(check_uef(twin, {{id, prices({{1, 1}, {1, 1}})}, 0}));
}

TEST_CASE("negotiated envy-freeness on the strong-negotiation family") {
    const auto inst = fixtures::strong_negotiation_example();
    auto zero = check_nef(inst, family_solution(0));
    REQUIRE(zero);
    CHECK(*zero.witness == prices({{50, 50}, {50, 50}}));
    CHECK(check_nef(inst, family_solution(1)));
    CHECK(check_nef(inst, family_solution(Money(1, 2))));
    CHECK(!check_nef(inst, family_solution(Money(3, 2))));
    CHECK(!check_nef(inst, family_solution(-1)));
    // Apartment 2 is never a consensus apartment.
    CHECK(!check_nef(inst, {{Assignment::identity(2, 2), family(0)}, 1}));

    const auto one = fixtures::monotonicity_first_apartment();
    CHECK(check_nef(one, {{Assignment::identity(3, 1), prices({{100, 100, 100}})}, 0}));
    CHECK(!check_nef(one, {{Assignment::identity(3, 1), prices({{120, 100, 80}})}, 0}));
}

TEST_CASE("strong negotiated envy-freeness") {
    const auto inst = fixtures::strong_negotiation_example();
    auto x0 = check_strong_nef(inst, family_solution(0));
    CHECK(x0.verdict == Certainty::Holds);
    REQUIRE(x0.witness);
    CHECK(*x0.witness == prices({{50, 50}, {50, 50}}));
    CHECK(check_strong_nef(inst, family_solution(1)).verdict == Certainty::Fails);
    CHECK(check_strong_nef(inst, family_solution(Money(1, 2))).verdict == Certainty::Fails);
    CHECK(check_strong_nef(inst, family_solution(Money(3, 2))).verdict == Certainty::Fails);

    // The bound at x = 1: 50 - (49 - (-49)) / 2 = 1 for the second player.
    const auto q = prices({{50, 50}, {50, 50}});
    const auto id = Assignment::identity(2, 2);
    CHECK(preferred_set(inst, id, q, 1, 0) == std::vector<std::size_t>{1});
    CHECK(50 - strong_bound_slack(inst, id, q, 1, 0) == 1);
    CHECK(strong_bound_slack(inst, id, q, 0, 0) == 0);

    const auto one = fixtures::monotonicity_first_apartment();
    CHECK(check_strong_nef(one, {{Assignment::identity(3, 1), prices({{100, 100, 100}})}, 0}).holds());
}

TEST_CASE("maximin envy-free prices per apartment") {
    const auto inst = fixtures::strong_negotiation_example();
    CHECK(maximin_ef_prices(inst, Assignment::identity(2, 2)) == prices({{50, 50}, {50, 50}}));
    const auto mono = fixtures::monotonicity_example();
    auto q = maximin_ef_prices(mono, Assignment{{{0, 1, 2}, {2, 1, 0}}});
    CHECK(q.p[0] == prices({{100, 100, 100}}).p[0]);
    CHECK(q.p[1] == prices({{300, 0, 0}}).p[0]);
    // Symmetric rooms: every bijection maximizes welfare.
    CHECK_NOTHROW(maximin_ef_prices(inst, Assignment{{{1, 0}, {0, 1}}}));
    CHECK_THROWS_AS(maximin_ef_prices(mono, Assignment{{{1, 0, 2}, {2, 1, 0}}}), std::invalid_argument);
}

TEST_CASE("distributional envy-freeness") {
    const auto e1 = fixtures::example_two_apartments();
    const auto id = Assignment::identity(2, 2);
    const std::vector<Money> half{Money(1, 2), Money(1, 2)};
    CHECK(check_def(e1, id, prices({{200, 100}, {100, 200}}), half));
    CHECK(!check_def(e1, id, prices({{150, 150}, {150, 150}}), half));
    CHECK_THROWS_AS(check_def(e1, id, prices({{200, 100}, {100, 200}}), {Money(1), Money(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_def(e1, id, prices({{200, 100}, {100, 200}}), {Money(2), Money(-1)}),
                    std::invalid_argument);

    const auto e5 = fixtures::strong_negotiation_example();
    const DefOptions nonneg{true};
    for (const auto& p : {prices({{50, 50}, {50, 50}}), prices({{99, 1}, {1, 99}}), prices({{100, 0}, {0, 100}}),
                          prices({{50, 50}, {0, 100}})})
        for (const auto& d : {std::vector<Money>{1, 0}, std::vector<Money>{0, 1}, half})
            CHECK(!check_def(e5, id, p, d, nonneg));
    // With a negative price the first apartment supports a point-mass lottery.
    CHECK(check_def(e5, id, prices({{50, 50}, {-49, 149}}), {Money(1), Money(0)}));
    CHECK(!check_def(e5, id, prices({{50, 50}, {-49, 149}}), {Money(1), Money(0)}, nonneg));

    Instance twin({{{Money(2), Money(0)}, {Money(2), Money(0)}}, {{Money(0), Money(2)}, {Money(0), Money(2)}}},
                  {Money(2), Money(2)});
    CHECK(check_def(twin, id, prices({{1, 1}, {1, 1}}), {Money(1), Money(0)}));
}
