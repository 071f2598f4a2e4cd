#include "rentdiv/solvers.hpp"

#include "lp_blocks.hpp"
#include "rentdiv/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rentdiv {

using detail::Pattern;
using detail::PriceVars;

Objective maximin_objective(std::size_t players) {
    Objective out;
    for (std::size_t i = 0; i < players; ++i) {
        AffineFunction f{std::vector<Money>(players, Money(0)), 0};
        f.coeffs[i] = 1;
        out.push_back(std::move(f));
    }
    return out;
}

Objective equitability_objective(std::size_t players) {
    Objective out;
    for (std::size_t i = 0; i < players; ++i)
        for (std::size_t i2 = 0; i2 < players; ++i2) {
            if (i == i2) continue;
            AffineFunction f{std::vector<Money>(players, Money(0)), 0};
            f.coeffs[i] = 1;
            f.coeffs[i2] = -1;
            out.push_back(std::move(f));
        }
    if (out.empty()) out.push_back({std::vector<Money>(players, Money(0)), 0});
    return out;
}

Money evaluate(const Objective& objective, const std::vector<Money>& utilities) {
    if (objective.empty()) throw std::invalid_argument("objective has no functions");
    Money best;
    for (std::size_t q = 0; q < objective.size(); ++q) {
        if (objective[q].coeffs.size() != utilities.size())
            throw std::invalid_argument("objective arity differs from player count");
        Money v = objective[q].constant;
        for (std::size_t i = 0; i < utilities.size(); ++i) v += objective[q].coeffs[i] * utilities[i];
        if (q == 0 || v < best) best = v;
    }
    return best;
}

std::vector<Money> chosen_utilities(const Instance& inst, const Solution& sol) {
    std::vector<Money> u;
    for (std::size_t i = 0; i < inst.players(); ++i) u.push_back(utility(inst, sol.partial, i, sol.chosen));
    return u;
}

std::vector<std::size_t> welfare_argmax(const Instance& inst, const Assignment& asg) {
    Money best = welfare(inst, asg, 0);
    for (std::size_t j = 1; j < inst.apartments(); ++j) best = std::max(best, welfare(inst, asg, j));
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < inst.apartments(); ++j)
        if (welfare(inst, asg, j) == best) out.push_back(j);
    return out;
}

namespace {

// Room k of apartment j costs at least max_i (V_i(r_jk) - u_i); returns the
// sum of those floors and the maximizing player per room.
Money price_floor(const Instance& inst, std::size_t j, const std::vector<Money>& u,
                  std::vector<std::size_t>* holders = nullptr) {
    const std::size_t n = inst.players();
    Money total = 0;
    if (holders) holders->assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t arg = 0;
        Money best = inst.value(0, j, k) - u[0];
        for (std::size_t i = 1; i < n; ++i) {
            Money v = inst.value(i, j, k) - u[i];
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        if (holders) (*holders)[k] = arg;
        total += best;
    }
    return total;
}

void check_objective(const Instance& inst, const Objective& objective) {
    if (objective.empty()) throw std::invalid_argument("objective has no functions");
    for (const auto& f : objective)
        if (f.coeffs.size() != inst.players()) throw std::invalid_argument("objective arity differs from player count");
}

struct Lp1 {
    lp::LinearProgram prog;
    PriceVars p, q;
    std::size_t z = 0;
};

// Maximize z <= f_q(U(A_{j'}, P)) over consensus-in-j' P reachable by
// negotiation from an individually envy-free Q.
Lp1 build_lp1(const Instance& inst, const Assignment& asg, std::size_t chosen, const Objective& objective) {
    const std::size_t n = inst.players(), m = inst.apartments();
    Lp1 out;
    auto& prog = out.prog;
    out.p = detail::add_price_vars(prog, n, m, "P");
    out.q = detail::add_price_vars(prog, n, m, "Q");
    out.z = prog.add_variable("z");
    for (std::size_t f = 0; f < objective.size(); ++f) {
        std::vector<lp::Term> terms{{out.z, 1}};
        Money rhs = objective[f].constant;
        for (std::size_t i = 0; i < n; ++i) {
            const Money& c = objective[f].coeffs[i];
            if (sgn(c) == 0) continue;
            const std::size_t room = asg.room(i, chosen);
            terms.push_back({out.p(chosen, room), c});
            rhs += c * inst.value(i, chosen, room);
        }
        prog.add_constraint(std::move(terms), lp::Relation::LessEqual, rhs, "objective " + std::to_string(f));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (j == chosen) continue;
            const std::size_t rj = asg.room(i, j), rc = asg.room(i, chosen);
            prog.add_constraint({{out.p(j, rj), 1}, {out.p(chosen, rc), -1}}, lp::Relation::GreaterEqual,
                                inst.value(i, j, rj) - inst.value(i, chosen, rc),
                                "consensus " + std::to_string(i) + "/" + std::to_string(j));
        }
    detail::add_individual_ef(prog, inst, asg, out.q, "Q");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<lp::Term> terms;
        detail::append_bundle(terms, asg, out.q, i, 1);
        detail::append_bundle(terms, asg, out.p, i, -1);
        prog.add_constraint(std::move(terms), lp::Relation::Equal, 0, "bundle " + std::to_string(i));
    }
    detail::add_rent_rows(prog, inst, out.p, "P");
    detail::add_rent_rows(prog, inst, out.q, "Q");
    prog.maximize({lp::Term{out.z, 1}});
    return out;
}

SolveResult read_lp1(const Lp1& lp1, const lp::Outcome& res, const Assignment& asg, std::size_t chosen) {
    SolveResult out;
    out.solution.partial.assignment = asg;
    out.solution.partial.prices = detail::read_prices(lp1.p, res.point);
    out.solution.chosen = chosen;
    out.witness_q = detail::read_prices(lp1.q, res.point);
    out.objective_value = res.value;
    return out;
}

}  // namespace

std::optional<SolveResult> solve_uef(const Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    const Assignment asg = welfare_max_profile(inst);
    // Summing the no-envy inequalities shows the chosen apartment must
    // maximize welfare, so only those are tried.
    for (std::size_t chosen : welfare_argmax(inst, asg)) {
        // Variables: chosen-apartment utilities u_i. Prices there are V - u.
        lp::LinearProgram prog;
        std::vector<std::size_t> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = prog.add_variable("u" + std::to_string(i));
        {
            std::vector<lp::Term> terms;
            for (std::size_t i = 0; i < n; ++i) terms.push_back({u[i], 1});
            prog.add_constraint(std::move(terms), lp::Relation::Equal, welfare(inst, asg, chosen), "welfare");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                if (i == i2) continue;
                const std::size_t room = asg.room(i2, chosen);
                prog.add_constraint({{u[i], 1}, {u[i2], -1}}, lp::Relation::GreaterEqual,
                                    inst.value(i, chosen, room) - inst.value(i2, chosen, room));
            }
        // Every other apartment needs sum_k max_i (V_i(r_jk) - u_i) <= R_j;
        // add the violated linear pieces lazily.
        std::vector<Money> point;
        bool feasible = false;
        for (;;) {
            auto res = lp::solve(prog);
            if (!res.optimal()) break;
            point = res.point;
            std::vector<Money> util(n);
            for (std::size_t i = 0; i < n; ++i) util[i] = point[u[i]];
            bool cut = false;
            for (std::size_t j = 0; j < m; ++j) {
                if (j == chosen) continue;
                std::vector<std::size_t> holders;
                if (price_floor(inst, j, util, &holders) <= inst.rent(j)) continue;
                std::vector<lp::Term> terms;
                Money rhs = inst.rent(j);
                for (std::size_t k = 0; k < n; ++k) {
                    terms.push_back({u[holders[k]], -1});
                    rhs -= inst.value(holders[k], j, k);
                }
                prog.add_constraint(std::move(terms), lp::Relation::LessEqual, rhs, "cut " + std::to_string(j));
                cut = true;
            }
            if (!cut) {
                feasible = true;
                break;
            }
        }
        if (!feasible) continue;

        std::vector<Money> util(n);
        for (std::size_t i = 0; i < n; ++i) util[i] = point[u[i]];
        SolveResult out;
        out.solution.partial.assignment = asg;
        out.solution.chosen = chosen;
        auto& prices = out.solution.partial.prices.p;
        prices.assign(m, std::vector<Money>(n));
        for (std::size_t j = 0; j < m; ++j) {
            if (j == chosen) {
                for (std::size_t i = 0; i < n; ++i)
                    prices[j][asg.room(i, j)] = inst.value(i, j, asg.room(i, j)) - util[i];
                continue;
            }
            const Money share = (inst.rent(j) - price_floor(inst, j, util)) / static_cast<long>(n);
            for (std::size_t k = 0; k < n; ++k) {
                Money best = inst.value(0, j, k) - util[0];
                for (std::size_t i = 1; i < n; ++i) best = std::max<Money>(best, inst.value(i, j, k) - util[i]);
                prices[j][k] = best + share;
            }
        }
        if (!check_uef(inst, out.solution)) throw std::logic_error("universal envy-free witness failed its check");
        return out;
    }
    return std::nullopt;
}

std::optional<SolveResult> solve_uef_direct(const Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    const Assignment asg = welfare_max_profile(inst);
    for (std::size_t chosen = 0; chosen < m; ++chosen) {
        lp::LinearProgram prog;
        auto p = detail::add_price_vars(prog, n, m, "P");
        detail::add_rent_rows(prog, inst, p, "P");
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t own = asg.room(i, chosen);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    if (j == chosen && k == own) continue;
                    // V_i(r_jk) - P(r_jk) <= V_i(own) - P(own)
                    prog.add_constraint({{p(j, k), 1}, {p(chosen, own), -1}}, lp::Relation::GreaterEqual,
                                        inst.value(i, j, k) - inst.value(i, chosen, own));
                }
        }
        auto res = lp::solve(prog);
        if (!res.optimal()) continue;
        SolveResult out;
        out.solution = {{asg, detail::read_prices(p, res.point)}, chosen};
        return out;
    }
    return std::nullopt;
}

SolveResult construct_nef(const Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    const Assignment asg = welfare_max_profile(inst);
    const PriceMatrix q = maximin_ef_prices(inst, asg);

    // Equal utilities W_j / n inside every apartment.
    PriceMatrix p;
    p.p.assign(m, std::vector<Money>(n));
    for (std::size_t j = 0; j < m; ++j) {
        const Money share = welfare(inst, asg, j) / static_cast<long>(n);
        for (std::size_t i = 0; i < n; ++i) p(j, asg.room(i, j)) = inst.value(i, j, asg.room(i, j)) - share;
    }
    // Spread each player's bundle gap X_i evenly over the apartments.
    for (std::size_t i = 0; i < n; ++i) {
        Money x = 0;
        for (std::size_t j = 0; j < m; ++j) x += q(j, asg.room(i, j)) - p(j, asg.room(i, j));
        const Money shift = x / static_cast<long>(m);
        for (std::size_t j = 0; j < m; ++j) p(j, asg.room(i, j)) += shift;
    }
    SolveResult out;
    out.solution = {{asg, p}, welfare_argmax(inst, asg).front()};
    out.witness_q = q;
    out.objective_value = evaluate(maximin_objective(n), chosen_utilities(inst, out.solution));
    return out;
}

SolveResult optimize_nef(const Instance& inst, const Objective& objective, const RoomPriority& priority) {
    check_objective(inst, objective);
    const Assignment asg = welfare_max_profile(inst, priority);
    const std::size_t chosen = welfare_argmax(inst, asg).front();
    const Lp1 lp1 = build_lp1(inst, asg, chosen, objective);
    const auto res = lp::solve(lp1.prog);
    if (!res.optimal()) throw std::logic_error("negotiated envy-free program has no optimum");
    return read_lp1(lp1, res, asg, chosen);
}

SolveResult solve_strong_nef(const Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    const Assignment full_asg = welfare_max_profile(inst);
    const std::size_t first = welfare_argmax(inst, full_asg).front();

    // Reindex so that position 0 holds a welfare-maximizing apartment.
    std::vector<std::size_t> order{first};
    for (std::size_t j = 0; j < m; ++j)
        if (j != first) order.push_back(j);
    const Instance work = inst.select_apartments(order);
    Assignment asg;
    for (std::size_t j : order) asg.perm.push_back(full_asg.perm[j]);

    const PriceMatrix q = maximin_ef_prices(work, asg);
    PriceMatrix p = q;
    auto u = [&](std::size_t i, std::size_t j) { return utility(work, asg, p, i, j); };
    auto shift = [&](std::size_t i, std::size_t j, const Money& up_here, const Money& down_elsewhere) {
        p(j, asg.room(i, j)) += up_here;
        for (std::size_t j2 = 0; j2 < m; ++j2)
            if (j2 != j) p(j2, asg.room(i, j2)) -= down_elsewhere;
    };
    const Money mm(static_cast<long>(m));

    for (std::size_t j = 0; j < m; ++j) {
        for (;;) {
            std::size_t i = n;
            for (std::size_t k = 0; k < n; ++k)
                if (u(k, j) > u(k, 0)) {
                    i = k;
                    break;
                }
            if (i == n) break;
            Money delta = u(i, j) - u(i, 0);
            shift(i, j, (mm - 1) * delta / mm, delta / mm);
            while (sgn(delta) > 0) {
                std::vector<std::size_t> t;
                for (std::size_t k = 0; k < n; ++k)
                    if (u(k, j) < u(k, 0)) t.push_back(k);
                if (t.empty()) throw std::logic_error("rebalancing found no counterpart while volume remains");
                Money eps = abs(u(t[0], 0) - u(t[0], j));
                for (std::size_t k : t) eps = std::min<Money>(eps, abs(u(k, 0) - u(k, j)));
                const Money size(static_cast<long>(t.size()));
                if (eps >= delta / size) {
                    for (std::size_t k : t) shift(k, j, -(mm - 1) * delta / (mm * size), -delta / (mm * size));
                    delta = 0;
                } else {
                    for (std::size_t k : t) shift(k, j, -(mm - 1) * eps / mm, -eps / mm);
                    delta -= size * eps;
                }
            }
        }
    }

    SolveResult out;
    out.solution.partial.assignment = full_asg;
    out.solution.partial.prices.p.assign(m, {});
    PriceMatrix q_orig;
    q_orig.p.assign(m, {});
    for (std::size_t t = 0; t < m; ++t) {
        out.solution.partial.prices.p[order[t]] = p.p[t];
        q_orig.p[order[t]] = q.p[t];
    }
    out.solution.chosen = first;
    out.witness_q = q_orig;
    out.objective_value = evaluate(maximin_objective(n), chosen_utilities(inst, out.solution));
    return out;
}

SolveResult optimize_strong_nef(const Instance& inst, const Objective& objective) {
    check_objective(inst, objective);
    const std::size_t n = inst.players(), m = inst.apartments();
    SolveResult best = solve_strong_nef(inst);
    best.objective_value = evaluate(objective, chosen_utilities(inst, best.solution));
    const Assignment& asg = best.solution.partial.assignment;
    const std::size_t chosen = best.solution.chosen;

    std::set<Pattern> seen;
    Pattern s = detail::pattern_of(inst, asg, *best.witness_q, chosen);
    for (std::size_t round = 0; round < n * m && !seen.count(s); ++round) {
        seen.insert(s);
        Lp1 lp1 = build_lp1(inst, asg, chosen, objective);
        detail::add_pattern(lp1.prog, inst, asg, lp1.q, chosen, s, "Q");
        detail::add_strong_bounds(lp1.prog, inst, asg, lp1.q, chosen, s, &lp1.p, nullptr, "Q");
        const auto res = lp::solve(lp1.prog);
        if (!res.optimal()) break;
        SolveResult cand = read_lp1(lp1, res, asg, chosen);
        if (*cand.objective_value > *best.objective_value) best = cand;
        s = detail::pattern_of(inst, asg, *cand.witness_q, chosen);
    }
    return best;
}

std::optional<DefResult> solve_def(const Instance& inst, const DefSolveOptions& options) {
    const std::size_t n = inst.players(), m = inst.apartments();
    if (m > 12) throw std::invalid_argument("support enumeration cap exceeded (m > 12)");
    const Assignment asg = welfare_max_profile(inst);
    const auto argmax = welfare_argmax(inst, asg);
    const std::set<std::size_t> consensus_ok(argmax.begin(), argmax.end());

    for (std::size_t size = std::max<std::size_t>(1, options.min_support); size <= m; ++size) {
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<std::size_t> support;
            for (std::size_t j = 0; j < m; ++j)
                if (pick[j]) support.push_back(j);
            // Every support apartment is a consensus apartment, hence
            // welfare-maximizing; other supports cannot be feasible.
            bool skip = false;
            for (std::size_t j : support) skip = skip || !consensus_ok.count(j);
            if (skip) continue;

            lp::LinearProgram prog;
            PriceVars p;
            p.var.assign(m, std::vector<std::size_t>(n));
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    p.var[j][k] = prog.add_variable("P[" + std::to_string(j) + "][" + std::to_string(k) + "]",
                                                    options.check.nonnegative_prices);
            detail::add_rent_rows(prog, inst, p, "P");
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j : support)
                    for (std::size_t j2 = 0; j2 < m; ++j2) {
                        if (j2 == j) continue;
                        const std::size_t r = asg.room(i, j), r2 = asg.room(i, j2);
                        prog.add_constraint({{p(j2, r2), 1}, {p(j, r), -1}}, lp::Relation::GreaterEqual,
                                            inst.value(i, j2, r2) - inst.value(i, j, r), "optimal lottery");
                    }
                for (std::size_t i2 = 0; i2 < n; ++i2) {
                    if (i2 == i) continue;
                    std::vector<lp::Term> terms;
                    Money rhs = 0;
                    for (std::size_t j : support) {
                        const std::size_t r = asg.room(i, j), r2 = asg.room(i2, j);
                        terms.push_back({p(j, r2), 1});
                        terms.push_back({p(j, r), -1});
                        rhs += inst.value(i, j, r2) - inst.value(i, j, r);
                    }
                    prog.add_constraint(std::move(terms), lp::Relation::GreaterEqual, rhs, "expected envy");
                }
            }
            auto res = lp::solve(prog);
            if (!res.optimal()) continue;
            DefResult out{asg, detail::read_prices(p, res.point), std::vector<Money>(m, Money(0))};
            for (std::size_t j : support) out.distribution[j] = Money(1, static_cast<unsigned long>(size));
            if (!check_def(inst, asg, out.prices, out.distribution, options.check))
                throw std::logic_error("distributional witness failed its check");
            return out;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return std::nullopt;
}

}  // namespace rentdiv
