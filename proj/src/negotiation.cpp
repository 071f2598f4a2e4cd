#include "rentdiv/negotiation.hpp"

#include <algorithm>
#include <stdexcept>

namespace rentdiv {

namespace {

// gmp arithmetic assumes canonical operands
PriceMatrix canonical(PriceMatrix m) {
    for (auto& row : m.p)
        for (auto& x : row) x.canonicalize();
    return m;
}

}  // namespace

PriceMatrix apply(const PriceMatrix& prices, const Assignment& asg, const Negotiation& t) {
    const std::size_t m = prices.p.size();
    const std::size_t n = m == 0 ? 0 : prices.p[0].size();
    if (sgn(t.delta) <= 0) throw std::invalid_argument("negotiation needs delta > 0");
    if (t.i1 == t.i2) throw std::invalid_argument("negotiation needs two distinct players");
    if (t.j1 == t.j2) throw std::invalid_argument("negotiation needs two distinct apartments");
    if (t.i1 >= n || t.i2 >= n || t.j1 >= m || t.j2 >= m)
        throw std::invalid_argument("negotiation index out of range");
    Money delta = t.delta;
    delta.canonicalize();
    PriceMatrix out = canonical(prices);
    out(t.j1, asg.room(t.i1, t.j1)) += delta;
    out(t.j2, asg.room(t.i1, t.j2)) -= delta;
    out(t.j1, asg.room(t.i2, t.j1)) -= delta;
    out(t.j2, asg.room(t.i2, t.j2)) += delta;
    return out;
}

PriceMatrix replay(const NegotiationLedger& ledger, const Assignment& asg) {
    PriceMatrix p = ledger.start;
    for (const auto& step : ledger.steps) p = apply(p, asg, step);
    return p;
}

NegotiationLedger reconstruct(const Assignment& asg, const PriceMatrix& q_in, const PriceMatrix& p_in) {
    const PriceMatrix q = canonical(q_in), p = canonical(p_in);
    const std::size_t m = asg.perm.size();
    const std::size_t n = m == 0 ? 0 : asg.perm[0].size();
    if (q.p.size() != m || p.p.size() != m) throw std::invalid_argument("price matrices do not match the assignment");
    for (std::size_t j = 0; j < m; ++j)
        if (q.p[j].size() != n || p.p[j].size() != n)
            throw std::invalid_argument("price matrices do not match the assignment");

    // d[i][j] = P(A_j(i)) - Q(A_j(i))
    std::vector<std::vector<Money>> d(n, std::vector<Money>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) d[i][j] = p(j, asg.room(i, j)) - q(j, asg.room(i, j));
    for (std::size_t j = 0; j < m; ++j) {
        Money sum = 0;
        for (std::size_t i = 0; i < n; ++i) sum += d[i][j];
        if (sum != 0)
            throw std::invalid_argument("not reachable by negotiation: apartment " + std::to_string(j) +
                                        " rent differs by " + format_money(sum));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Money sum = 0;
        for (std::size_t j = 0; j < m; ++j) sum += d[i][j];
        if (sum != 0)
            throw std::invalid_argument("not reachable by negotiation: player " + std::to_string(i) +
                                        " total differs by " + format_money(sum));
    }

    NegotiationLedger ledger{q, {}, q};
    if (m >= 2) {
        const std::size_t last = m - 1;
        for (std::size_t j = 0; j < last; ++j) {
            for (;;) {
                std::size_t hi = 0, lo = 0;
                for (std::size_t i = 1; i < n; ++i) {
                    if (d[i][j] > d[hi][j]) hi = i;
                    if (d[i][j] < d[lo][j]) lo = i;
                }
                if (sgn(d[hi][j]) <= 0) break;
                Money delta = std::min<Money>(d[hi][j], -d[lo][j]);
                d[hi][j] -= delta;
                d[hi][last] += delta;
                d[lo][j] += delta;
                d[lo][last] -= delta;
                ledger.steps.push_back({delta, hi, lo, j, last});
            }
        }
    }
    ledger.end = replay(ledger, asg);
    if (!(ledger.end == p)) throw std::logic_error("negotiation replay does not reach the target prices");
    return ledger;
}

ConsensusDelta min_consensus_delta(const Instance& inst, const PartialSolution& partial, std::size_t player,
                                   std::size_t chosen) {
    check_shapes(inst, partial);
    const std::size_t n = inst.players(), m = inst.apartments();
    if (player >= n) throw std::out_of_range("player index out of range");
    if (chosen >= m) throw std::out_of_range("apartment index out of range");

    const Money base = utility(inst, partial, player, chosen);
    std::vector<Money> gap(m, Money(0));
    std::vector<Money> positive;
    for (std::size_t j = 0; j < m; ++j) {
        const Money u = utility(inst, partial, player, j);
        if (j != chosen && u > base) {
            gap[j] = u - base;
            positive.push_back(gap[j]);
        }
    }
    // Least D >= 0 with sum_j max(0, gap_j - D) <= D; the root lies at
    // (sum of the k largest gaps) / (k + 1) for some k.
    std::sort(positive.begin(), positive.end(), std::greater<>());
    auto excess = [&](const Money& level) {
        Money s = 0;
        for (const auto& g : positive)
            if (g > level) s += g - level;
        return s;
    };
    ConsensusDelta out;
    out.total = 0;
    bool found = false;
    Money prefix = 0;
    for (std::size_t k = 0; k < positive.size(); ++k) {
        prefix += positive[k];
        Money level = prefix / static_cast<long>(k + 2);
        if (excess(level) <= level && (!found || level < out.total)) {
            out.total = level;
            found = true;
        }
    }

    out.per_apartment.assign(m, Money(0));
    for (std::size_t j = 0; j < m; ++j)
        if (gap[j] > out.total) out.per_apartment[j] = gap[j] - out.total;

    out.ledger.start = partial.prices;
    if (n >= 2) {
        const std::size_t partner = player == 0 ? 1 : 0;
        for (std::size_t j = 0; j < m; ++j)
            if (sgn(out.per_apartment[j]) > 0) out.ledger.steps.push_back({out.per_apartment[j], player, partner, j, chosen});
    }
    out.ledger.end = replay(out.ledger, partial.assignment);
    return out;
}

}  // namespace rentdiv
