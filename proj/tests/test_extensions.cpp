#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rentdiv/extensions.hpp"
#include "rentdiv/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace rentdiv;

namespace {

// Every ordering of the members poured into every sequence of types whose
// sizes add up, filling rooms in order.
std::optional<Money> brute_value(const TypedApartmentMarket& market, Coalition s) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < market.players; ++i)
        if (s >> i & 1u) members.push_back(i);
    std::optional<Money> best;
    std::vector<std::size_t> seq;
    std::function<void(std::size_t)> compose = [&](std::size_t left) {
        if (left == 0) {
            auto order = members;
            do {
                Money total = 0;
                std::size_t pos = 0;
                for (std::size_t t : seq) {
                    const auto& type = market.types[t];
                    total -= type.rent;
                    for (std::size_t k = 0; k < type.size(); ++k) total += type.values[order[pos++]][k];
                }
                if (!best || total > *best) best = total;
            } while (std::next_permutation(order.begin(), order.end()));
            return;
        }
        for (std::size_t t = 0; t < market.types.size(); ++t)
            if (market.types[t].size() <= left) {
                seq.push_back(t);
                compose(left - market.types[t].size());
                seq.pop_back();
            }
    };
    compose(members.size());
    return best;
}

TypedApartmentMarket random_market(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> val(-5, 10), size(1, static_cast<long>(n)), count(1, 3);
    TypedApartmentMarket m;
    m.players = n;
    const long types = count(rng);
    for (long t = 0; t < types; ++t) {
        ApartmentType type;
        type.name = "t" + std::to_string(t);
        const auto s = static_cast<std::size_t>(size(rng));
        type.rent = val(rng);
        type.values.assign(n, std::vector<Money>(s));
        for (auto& row : type.values)
            for (auto& x : row) x = val(rng);
        m.types.push_back(std::move(type));
    }
    return m;
}

}  // namespace

TEST_CASE("coalition values of the core example") {
    const auto market = fixtures::core_example();
    CHECK(coalition_value(market, 0b111) == 300);
    CHECK(coalition_value(market, 0b011) == 340);
    CHECK(coalition_value(market, 0b110) == 340);
    CHECK(coalition_value(market, 0b001) == -1360);
    CHECK(coalition_value(market, 0b100) == -280);
    const auto table = coalition_table(market);
    CHECK(*table[0] == 0);
    CHECK(*table[0b101] == 340);
}

TEST_CASE("empty core with the pairwise conflict") {
    const auto r = core_check(fixtures::core_example());
    CHECK(!r.nonempty);
    for (Coalition s : {0b011u, 0b101u, 0b110u, 0b111u})
        CHECK(std::find(r.conflict.begin(), r.conflict.end(), s) != r.conflict.end());
    CHECK(r.conflict.size() == 4);
    CHECK(r.conflict_labels.size() == 4);
    CHECK(coalition_label(0b101) == "{1,3}");
}

TEST_CASE("nonempty cores") {
    TypedApartmentMarket one;
    one.players = 1;
    one.types.push_back({"solo", 3, {{Money(10)}}});
    auto r1 = core_check(one);
    CHECK(r1.nonempty);
    CHECK(r1.alpha == std::vector<Money>{7});

    // Only the grand coalition can be housed; any split of its value works.
    TypedApartmentMarket distinct;
    distinct.players = 3;
    distinct.types.push_back({"flat", 30, {{Money(30), Money(0), Money(0)},
                                           {Money(0), Money(30), Money(0)},
                                           {Money(0), Money(0), Money(30)}}});
    auto r = core_check(distinct);
    REQUIRE(r.nonempty);
    CHECK(std::accumulate(r.alpha.begin(), r.alpha.end(), Money(0)) == 60);
    CHECK(!coalition_table(distinct)[0b011]);
    CHECK_THROWS_AS(coalition_value(distinct, 0b011), std::domain_error);
}

TEST_CASE("coalition values against brute force, core witnesses by enumeration") {
    std::mt19937_64 rng(21);
    int empty = 0, nonempty = 0;
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 1 + t % 4;
        auto market = random_market(rng, n);
        const auto table = coalition_table(market);
        for (Coalition s = 1; s < (1u << n); ++s) CHECK(table[s] == brute_value(market, s));
        if (!table[(1u << n) - 1]) {
            CHECK_THROWS_AS(core_check(market), std::domain_error);
            continue;
        }
        auto r = core_check(market);
        if (r.nonempty) {
            ++nonempty;
            for (Coalition s = 1; s < (1u << n); ++s) {
                if (!table[s]) continue;
                Money sum = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (s >> i & 1u) sum += r.alpha[i];
                CHECK(sum >= *table[s]);
            }
        } else {
            ++empty;
            CHECK(!r.conflict.empty());
        }
    }
    CHECK(nonempty > 0);
    MESSAGE("random markets: " << nonempty << " nonempty cores, " << empty << " empty");
}

TEST_CASE("market validation and scale cap") {
    TypedApartmentMarket big;
    big.players = 7;
    big.types.push_back({"solo", 0, std::vector<std::vector<Money>>(7, {Money(1)})});
    CHECK_THROWS_AS(core_check(big), std::invalid_argument);
    TypedApartmentMarket ragged;
    ragged.players = 2;
    ragged.types.push_back({"bad", 0, {{Money(1), Money(2)}, {Money(1)}}});
    CHECK_THROWS_AS(ragged.validate(), std::invalid_argument);
}

TEST_CASE("monotonicity probe") {
    const auto first = fixtures::monotonicity_first_apartment();
    const auto mono = fixtures::monotonicity_example();
    std::vector<std::vector<Money>> second;
    for (std::size_t i = 0; i < 3; ++i) second.push_back(mono.values()[i][1]);

    auto down = monotonicity_probe(first, second, 300, maximin_objective(3));
    CHECK(down.before == 50);
    CHECK(down.after < 50);
    CHECK(down.direction == Direction::Decreased);

    auto up = monotonicity_probe(first, fixtures::monotonicity_alternative_apartment(), 300, maximin_objective(3));
    CHECK(up.before == 50);
    CHECK(up.after == 200);
    CHECK(up.direction == Direction::Increased);

    std::vector<std::vector<Money>> copy;
    for (std::size_t i = 0; i < 3; ++i) copy.push_back(first.values()[i][0]);
    auto same = monotonicity_probe(first, copy, 300, maximin_objective(3));
    CHECK(same.after == same.before);
    CHECK(same.direction == Direction::Unchanged);

    auto lopsided = copy;
    lopsided[0][0] += 1;
    CHECK_THROWS_AS(monotonicity_probe(first, lopsided, 300, maximin_objective(3)), std::invalid_argument);
}
