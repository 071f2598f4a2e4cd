#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rentdiv/fixtures.hpp"
#include "rentdiv/negotiation.hpp"
#include "support.hpp"

using namespace rentdiv;
using testing_support::prices;

namespace {

std::vector<Money> player_totals(const PriceMatrix& p, const Assignment& a) {
    std::vector<Money> out;
    for (std::size_t i = 0; i < a.perm[0].size(); ++i) out.push_back(bundle_price({a, p}, i));
    return out;
}

std::vector<Money> row_sums(const PriceMatrix& p) {
    std::vector<Money> out;
    for (const auto& row : p.p) {
        Money s = 0;
        for (const auto& x : row) s += x;
        out.push_back(s);
    }
    return out;
}

PriceMatrix random_prices(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_int_distribution<long> d(-30, 90);
    PriceMatrix p;
    for (std::size_t j = 0; j < m; ++j) {
        p.p.emplace_back();
        for (std::size_t k = 0; k < n; ++k) {
            Money x(d(rng), 1 + d(rng) % 3 + 3);
            x.canonicalize();
            p.p.back().push_back(x);
        }
    }
    return p;
}

Assignment random_assignment(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    Assignment a = Assignment::identity(n, m);
    for (auto& row : a.perm) std::shuffle(row.begin(), row.end(), rng);
    return a;
}

}  // namespace

TEST_CASE("apply") {
    const auto id = Assignment::identity(2, 2);
    const auto even = prices({{150, 150}, {150, 150}});
    Negotiation t{50, 0, 1, 0, 1};
    auto p = apply(even, id, t);
    CHECK(p == prices({{200, 100}, {100, 200}}));
    CHECK(apply(p, id, Negotiation{50, 0, 1, 1, 0}) == even);
    CHECK_THROWS_AS(apply(even, id, Negotiation{0, 0, 1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(apply(even, id, Negotiation{1, 0, 0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(apply(even, id, Negotiation{1, 0, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(apply(even, id, Negotiation{1, 0, 5, 0, 1}), std::invalid_argument);
}

TEST_CASE("apply preserves rents and player totals") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 3, m = 2 + trial % 4;
        auto a = random_assignment(rng, n, m);
        auto p = random_prices(rng, n, m);
        std::uniform_int_distribution<std::size_t> pi(0, n - 1), pj(0, m - 1);
        Negotiation t{Money(1 + trial % 17, 1 + trial % 5), pi(rng), 0, pj(rng), 0};
        t.i2 = (t.i1 + 1 + pi(rng) % (n - 1)) % n;
        t.j2 = (t.j1 + 1 + pj(rng) % (m - 1)) % m;
        auto q = apply(p, a, t);
        CHECK(row_sums(q) == row_sums(p));
        CHECK(player_totals(q, a) == player_totals(p, a));
    }
}

TEST_CASE("reconstruct") {
    const auto id = Assignment::identity(2, 2);
    const auto even = prices({{150, 150}, {150, 150}});
    auto ledger = reconstruct(id, even, prices({{200, 100}, {100, 200}}));
    REQUIRE(ledger.steps.size() == 1);
    CHECK(ledger.steps[0] == Negotiation{50, 0, 1, 0, 1});
    CHECK(reconstruct(id, even, even).steps.empty());
    CHECK_THROWS_AS(reconstruct(id, even, prices({{160, 140}, {150, 150}})), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(id, even, prices({{160, 150}, {150, 140}})), std::invalid_argument);
}

TEST_CASE("reconstruct round-trips random targets") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 4, m = 1 + trial % 5;
        auto a = random_assignment(rng, n, m);
        auto q = random_prices(rng, n, m);
        // Random negotiations from q give a reachable target.
        PriceMatrix p = q;
        if (n >= 2 && m >= 2) {
            std::uniform_int_distribution<std::size_t> pi(0, n - 1), pj(0, m - 1);
            for (int k = 0; k < 6; ++k) {
                std::size_t i1 = pi(rng), i2 = (i1 + 1) % n, j1 = pj(rng), j2 = (j1 + 1) % m;
                p = apply(p, a, Negotiation{Money(1 + k, 3), i1, i2, j1, j2});
            }
        }
        auto ledger = reconstruct(a, q, p);
        CHECK(replay(ledger, a) == p);
        CHECK(ledger.steps.size() <= n * m);
        for (const auto& s : ledger.steps) CHECK(s.delta > 0);
    }
}

TEST_CASE("least volume to reach consensus") {
    const auto inst = fixtures::strong_negotiation_example();
    const PartialSolution even{Assignment::identity(2, 2), prices({{50, 50}, {50, 50}})};
    auto d = min_consensus_delta(inst, even, 1, 0);
    CHECK(d.total == 49);
    REQUIRE(d.ledger.steps.size() == 1);
    CHECK(d.ledger.steps[0] == Negotiation{49, 1, 0, 1, 0});
    CHECK(min_consensus_delta(inst, even, 0, 0).total == 0);
    CHECK(min_consensus_delta(inst, even, 0, 0).ledger.steps.empty());

    // One player preferring two other apartments by 3 and 6.
    Instance three({{{Money(10)}, {Money(13)}, {Money(16)}}}, {Money(0), Money(0), Money(0)});
    const PartialSolution zero{Assignment::identity(1, 3), prices({{0}, {0}, {0}})};
    CHECK(min_consensus_delta(three, zero, 0, 0).total == 3);
}

namespace {

// Grid oracle: smallest D on a 1/den grid for which per-apartment volumes
// D_j >= max(0, gap_j - D) fit into D.
Money grid_minimum(const std::vector<long>& gaps, long den) {
    for (long k = 0;; ++k) {
        Money level(k, den);
        level.canonicalize();
        Money need = 0;
        for (long g : gaps)
            if (Money(g) > level) need += Money(g) - level;
        if (need <= level) return level;
    }
}

}  // namespace

TEST_CASE("least volume agrees with a grid search") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> g(0, 12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + trial % 4;
        std::vector<long> gaps;
        ValueTensor v(2, std::vector<std::vector<Money>>(m, std::vector<Money>(2, Money(0))));
        for (std::size_t j = 1; j < m; ++j) {
            long x = g(rng) - 3;
            v[0][j][0] = 20 + x;
            if (x > 0) gaps.push_back(x);
            v[0][0][0] = 20;
        }
        v[0][0][0] = 20;
        Instance inst(v, std::vector<Money>(m, Money(0)));
        PartialSolution s{Assignment::identity(2, m), PriceMatrix{std::vector<std::vector<Money>>(m, {0, 0})}};
        auto d = min_consensus_delta(inst, s, 0, 0);
        // Denominators of the exact answer divide (k + 1) for k <= m - 1.
        long den = 1;
        for (long k = 2; k <= static_cast<long>(m); ++k) den = std::lcm(den, k);
        CHECK(d.total == grid_minimum(gaps, den));

        auto after = replay(d.ledger, s.assignment);
        Money traded = 0;
        for (const auto& st : d.ledger.steps) traded += st.delta;
        CHECK(traded == d.total);
        PartialSolution done{s.assignment, after};
        for (std::size_t j = 0; j < m; ++j) CHECK(utility(inst, done, 0, 0) >= utility(inst, done, 0, j));
    }
}

TEST_CASE("unequal gaps need more than the averaged formula") {
    // Gaps 10 and 1: averaging gives 11/3 but the second apartment cannot
    // absorb a negative volume; the least feasible total is 5.
    Instance inst({{{Money(0)}, {Money(10)}, {Money(1)}}}, {Money(0), Money(0), Money(0)});
    PartialSolution s{Assignment::identity(1, 3), prices({{0}, {0}, {0}})};
    CHECK(min_consensus_delta(inst, s, 0, 0).total == 5);
}
