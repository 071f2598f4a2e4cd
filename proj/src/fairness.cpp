#include "rentdiv/fairness.hpp"

#include "lp_blocks.hpp"
#include "rentdiv/lp.hpp"

#include <set>
#include <stdexcept>

namespace rentdiv {

using detail::Pattern;
using detail::PriceVars;

namespace {

std::vector<std::vector<Money>> utility_table(const Instance& inst, const PartialSolution& partial) {
    std::vector<std::vector<Money>> u(inst.players(), std::vector<Money>(inst.apartments()));
    for (std::size_t i = 0; i < inst.players(); ++i)
        for (std::size_t j = 0; j < inst.apartments(); ++j) u[i][j] = utility(inst, partial, i, j);
    return u;
}

bool is_consensus(const std::vector<std::vector<Money>>& u, std::size_t j) {
    for (const auto& row : u)
        for (const auto& other : row)
            if (other > row[j]) return false;
    return true;
}

// Q individually EF, rows sum to rents, bundle totals equal those of P.
lp::LinearProgram negotiation_program(const Instance& inst, const Assignment& asg, const PriceMatrix& p,
                                      PriceVars& q) {
    lp::LinearProgram prog;
    q = detail::add_price_vars(prog, inst.players(), inst.apartments(), "Q");
    detail::add_individual_ef(prog, inst, asg, q, "Q");
    detail::add_rent_rows(prog, inst, q, "Q");
    for (std::size_t i = 0; i < inst.players(); ++i) {
        std::vector<lp::Term> terms;
        detail::append_bundle(terms, asg, q, i, 1);
        Money total = 0;
        for (std::size_t j = 0; j < inst.apartments(); ++j) total += p(j, asg.room(i, j));
        prog.add_constraint(std::move(terms), lp::Relation::Equal, total, "bundle " + std::to_string(i));
    }
    return prog;
}

}  // namespace

EnvyVerdict check_individually_ef(const Instance& inst, const PartialSolution& partial) {
    check_shapes(inst, partial);
    const std::size_t n = inst.players();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t j = 0; j < inst.apartments(); ++j) {
                const std::size_t room = partial.assignment.room(i2, j);
                if (inst.value(i, j, room) - partial.prices(j, room) > utility(inst, partial, i, j))
                    return {false, EnvyViolation{i, i2, j}};
            }
    return {};
}

std::vector<std::size_t> consensus_apartments(const Instance& inst, const PartialSolution& partial) {
    check_shapes(inst, partial);
    const auto u = utility_table(inst, partial);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < inst.apartments(); ++j)
        if (is_consensus(u, j)) out.push_back(j);
    if (!out.empty()) {
        Money best = welfare(inst, partial.assignment, 0);
        for (std::size_t j = 1; j < inst.apartments(); ++j) best = std::max(best, welfare(inst, partial.assignment, j));
        std::vector<std::size_t> argmax;
        for (std::size_t j = 0; j < inst.apartments(); ++j)
            if (welfare(inst, partial.assignment, j) == best) argmax.push_back(j);
        if (argmax != out) throw std::logic_error("consensus set differs from the welfare-argmax set");
    }
    return out;
}

EnvyVerdict check_uef(const Instance& inst, const Solution& sol) {
    check_shapes(inst, sol.partial);
    if (sol.chosen >= inst.apartments()) throw std::out_of_range("chosen apartment out of range");
    const std::size_t n = inst.players();
    for (std::size_t i = 0; i < n; ++i) {
        const Money own = utility(inst, sol.partial, i, sol.chosen);
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t j = 0; j < inst.apartments(); ++j) {
                const std::size_t room = sol.partial.assignment.room(i2, j);
                if (inst.value(i, j, room) - sol.partial.prices(j, room) > own)
                    return {false, EnvyViolation{i, i2, j}};
            }
    }
    return {};
}

NefVerdict check_nef(const Instance& inst, const Solution& sol) {
    check_shapes(inst, sol.partial);
    if (sol.chosen >= inst.apartments()) throw std::out_of_range("chosen apartment out of range");
    NefVerdict out;
    if (!rows_match_rents(inst, sol.partial.prices)) {
        out.reason = "price rows do not sum to the rents";
        return out;
    }
    if (!is_consensus(utility_table(inst, sol.partial), sol.chosen)) {
        out.reason = "chosen apartment is not a consensus apartment";
        return out;
    }
    PriceVars q;
    auto prog = negotiation_program(inst, sol.partial.assignment, sol.partial.prices, q);
    auto res = lp::solve(prog);
    if (!res.optimal()) {
        out.reason = "no individually envy-free Q has the same per-player totals";
        return out;
    }
    out.holds = true;
    out.witness = detail::read_prices(q, res.point);
    return out;
}

std::vector<std::size_t> preferred_set(const Instance& inst, const Assignment& asg, const PriceMatrix& q,
                                       std::size_t player, std::size_t chosen) {
    std::vector<std::size_t> out;
    const Money base = utility(inst, asg, q, player, chosen);
    for (std::size_t j = 0; j < inst.apartments(); ++j)
        if (j != chosen && utility(inst, asg, q, player, j) > base) out.push_back(j);
    return out;
}

Money strong_bound_slack(const Instance& inst, const Assignment& asg, const PriceMatrix& q, std::size_t player,
                         std::size_t chosen) {
    const auto s = preferred_set(inst, asg, q, player, chosen);
    Money total = 0;
    const Money base = utility(inst, asg, q, player, chosen);
    for (std::size_t j : s) total += utility(inst, asg, q, player, j) - base;
    return total / static_cast<long>(s.size() + 1);
}

StrongNefVerdict check_strong_nef(const Instance& inst, const Solution& sol, const std::optional<PriceMatrix>& hint) {
    StrongNefVerdict out;
    const auto nef = check_nef(inst, sol);
    if (!nef) {
        out.reason = nef.reason;
        return out;
    }
    const auto& asg = sol.partial.assignment;
    const std::size_t n = inst.players(), m = inst.apartments(), chosen = sol.chosen;

    std::set<Pattern> infeasible;
    auto try_pattern = [&](const Pattern& s) -> bool {
        if (infeasible.count(s)) return false;
        lp::LinearProgram prog;
        PriceVars q;
        prog = negotiation_program(inst, asg, sol.partial.prices, q);
        detail::add_pattern(prog, inst, asg, q, chosen, s, "Q");
        detail::add_strong_bounds(prog, inst, asg, q, chosen, s, nullptr, &sol.partial.prices, "Q");
        auto res = lp::solve(prog);
        if (!res.optimal()) {
            infeasible.insert(s);
            return false;
        }
        out.verdict = Certainty::Holds;
        out.witness = detail::read_prices(q, res.point);
        return true;
    };

    std::vector<PriceMatrix> candidates;
    if (hint && hint->p.size() == m && rows_match_rents(inst, *hint)) candidates.push_back(*hint);
    try {
        candidates.push_back(maximin_ef_prices(inst, asg));
    } catch (const std::invalid_argument&) {
    }
    candidates.push_back(*nef.witness);

    for (const auto& start : candidates) {
        std::set<Pattern> seen;
        Pattern s = detail::pattern_of(inst, asg, start, chosen);
        for (std::size_t round = 0; round < n * m && !seen.count(s); ++round) {
            seen.insert(s);
            if (try_pattern(s)) return out;
            // Relaxation: keep the frozen bound, drop the sign conditions.
            PriceVars q;
            auto prog = negotiation_program(inst, asg, sol.partial.prices, q);
            detail::add_strong_bounds(prog, inst, asg, q, chosen, s, nullptr, &sol.partial.prices, "Q");
            auto res = lp::solve(prog);
            if (!res.optimal()) break;
            s = detail::pattern_of(inst, asg, detail::read_prices(q, res.point), chosen);
        }
    }

    // Exhaustive fallback over every preferred-set pattern.
    const std::size_t free_bits = n * (m - 1);
    if (n <= 3 && free_bits <= 12) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << free_bits); ++mask) {
            Pattern s(n, std::vector<bool>(m, false));
            std::size_t bit = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (j != chosen) s[i][j] = (mask >> bit++) & 1;
            if (try_pattern(s)) return out;
        }
        out.verdict = Certainty::Fails;
        out.reason = "no individually envy-free Q satisfies the strong bound";
        return out;
    }
    out.verdict = Certainty::Unknown;
    out.reason = "bound not certified: pattern iteration did not converge";
    return out;
}

PriceMatrix maximin_ef_prices(const Instance& inst, const Assignment& asg) {
    check_shapes(inst, asg);
    const std::size_t n = inst.players(), m = inst.apartments();
    PriceMatrix out;
    for (std::size_t j = 0; j < m; ++j) {
        lp::LinearProgram prog;
        PriceVars q;
        q.var.assign(m, {});
        for (std::size_t k = 0; k < n; ++k) q.var[j].push_back(prog.add_variable("Q" + std::to_string(k)));
        const std::size_t t = prog.add_variable("t");
        detail::add_apartment_ef(prog, inst, asg, q, j, "Q");
        detail::add_rent_row(prog, inst, q, j, "Q");
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t room = asg.room(i, j);
            prog.add_constraint({{t, 1}, {q(j, room), 1}}, lp::Relation::LessEqual, inst.value(i, j, room));
        }
        prog.maximize({lp::Term{t, 1}});
        auto res = lp::solve(prog);
        if (!res.optimal())
            throw std::invalid_argument("assignment in apartment " + std::to_string(j) +
                                        " is not welfare-maximizing; no envy-free prices exist");
        out.p.emplace_back();
        for (std::size_t k = 0; k < n; ++k) out.p.back().push_back(res.point[q(j, k)]);
    }
    return out;
}

bool check_def(const Instance& inst, const Assignment& asg, const PriceMatrix& prices, const std::vector<Money>& dist,
               const DefOptions& options) {
    check_shapes(inst, asg);
    check_shapes(inst, prices);
    const std::size_t n = inst.players(), m = inst.apartments();
    if (dist.size() != m) throw std::invalid_argument("distribution length differs from apartment count");
    Money total = 0;
    for (const auto& d : dist) {
        if (d < 0) throw std::invalid_argument("distribution has a negative weight");
        total += d;
    }
    if (total != 1) throw std::invalid_argument("distribution does not sum to 1");
    if (!rows_match_rents(inst, prices)) return false;
    if (options.nonnegative_prices)
        for (const auto& row : prices.p)
            for (const auto& x : row)
                if (x < 0) return false;

    for (std::size_t i = 0; i < n; ++i) {
        Money best = utility(inst, asg, prices, i, 0);
        for (std::size_t j = 1; j < m; ++j) best = std::max(best, utility(inst, asg, prices, i, j));
        Money own = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const Money u = utility(inst, asg, prices, i, j);
            if (dist[j] > 0 && u != best) return false;
            own += dist[j] * u;
        }
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            Money other = 0;
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t room = asg.room(i2, j);
                other += dist[j] * (inst.value(i, j, room) - prices(j, room));
            }
            if (other > own) return false;
        }
    }
    return true;
}

}  // namespace rentdiv
