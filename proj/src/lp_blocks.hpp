#pragma once

// Shared LP builders for the price-matrix programs.

#include "rentdiv/lp.hpp"
#include "rentdiv/model.hpp"

#include <string>
#include <vector>

namespace rentdiv::detail {

/// var[j][k]: LP variable holding the price of room k in apartment j.
struct PriceVars {
    std::vector<std::vector<std::size_t>> var;
    std::size_t operator()(std::size_t j, std::size_t k) const { return var[j][k]; }
};

inline PriceVars add_price_vars(lp::LinearProgram& prog, std::size_t players, std::size_t apartments,
                                const std::string& prefix) {
    PriceVars out;
    out.var.assign(apartments, std::vector<std::size_t>(players));
    for (std::size_t j = 0; j < apartments; ++j)
        for (std::size_t k = 0; k < players; ++k)
            out.var[j][k] = prog.add_variable(prefix + "[" + std::to_string(j) + "][" + std::to_string(k) + "]");
    return out;
}

inline void add_rent_row(lp::LinearProgram& prog, const Instance& inst, const PriceVars& q, std::size_t j,
                         const std::string& tag) {
    std::vector<lp::Term> terms;
    for (std::size_t k = 0; k < inst.players(); ++k) terms.push_back({q(j, k), 1});
    prog.add_constraint(std::move(terms), lp::Relation::Equal, inst.rent(j), tag + " rent " + std::to_string(j));
}

inline void add_rent_rows(lp::LinearProgram& prog, const Instance& inst, const PriceVars& q,
                          const std::string& tag) {
    for (std::size_t j = 0; j < inst.apartments(); ++j) add_rent_row(prog, inst, q, j, tag);
}

/// Envy-freeness of (A_j, q) inside apartment j:
/// q(A_j(i2)) - q(A_j(i)) >= V_i(A_j(i2)) - V_i(A_j(i)).
inline void add_apartment_ef(lp::LinearProgram& prog, const Instance& inst, const Assignment& asg,
                             const PriceVars& q, std::size_t j, const std::string& tag) {
    const std::size_t n = inst.players();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            if (i == i2) continue;
            const std::size_t own = asg.room(i, j), other = asg.room(i2, j);
            prog.add_constraint({{q(j, other), 1}, {q(j, own), -1}}, lp::Relation::GreaterEqual,
                                inst.value(i, j, other) - inst.value(i, j, own),
                                tag + " ef " + std::to_string(j) + ":" + std::to_string(i) + "/" +
                                    std::to_string(i2));
        }
}

inline void add_individual_ef(lp::LinearProgram& prog, const Instance& inst, const Assignment& asg,
                              const PriceVars& q, const std::string& tag) {
    for (std::size_t j = 0; j < inst.apartments(); ++j) add_apartment_ef(prog, inst, asg, q, j, tag);
}

/// Terms of sum_j q(A_j(i)) scaled by `sign`.
inline void append_bundle(std::vector<lp::Term>& terms, const Assignment& asg, const PriceVars& q,
                          std::size_t i, long sign) {
    for (std::size_t j = 0; j < q.var.size(); ++j) terms.push_back({q(j, asg.room(i, j)), Money(sign)});
}

inline PriceMatrix read_prices(const PriceVars& q, const std::vector<Money>& point) {
    PriceMatrix out;
    for (const auto& row : q.var) {
        out.p.emplace_back();
        for (std::size_t v : row) out.p.back().push_back(point[v]);
    }
    return out;
}

/// pattern[i][j]: apartment j is in player i's strictly-preferred set.
using Pattern = std::vector<std::vector<bool>>;

inline Pattern pattern_of(const Instance& inst, const Assignment& asg, const PriceMatrix& q, std::size_t chosen) {
    Pattern out(inst.players(), std::vector<bool>(inst.apartments(), false));
    for (std::size_t i = 0; i < inst.players(); ++i) {
        const Money base = utility(inst, asg, q, i, chosen);
        for (std::size_t j = 0; j < inst.apartments(); ++j)
            out[i][j] = j != chosen && utility(inst, asg, q, i, j) > base;
    }
    return out;
}

/// Sign conditions fixing the preferred sets: U_i(A_j, q) >= U_i(A_{j*}, q)
/// for j in the pattern, <= otherwise.
inline void add_pattern(lp::LinearProgram& prog, const Instance& inst, const Assignment& asg, const PriceVars& q,
                        std::size_t chosen, const Pattern& pattern, const std::string& tag) {
    for (std::size_t i = 0; i < inst.players(); ++i)
        for (std::size_t j = 0; j < inst.apartments(); ++j) {
            if (j == chosen) continue;
            const std::size_t rj = asg.room(i, j), rc = asg.room(i, chosen);
            const Money gap = inst.value(i, chosen, rc) - inst.value(i, j, rj);
            prog.add_constraint({{q(chosen, rc), 1}, {q(j, rj), -1}},
                                pattern[i][j] ? lp::Relation::GreaterEqual : lp::Relation::LessEqual, gap,
                                tag + " pattern " + std::to_string(i) + "/" + std::to_string(j));
        }
}

/// Strong bound with frozen preferred sets S_i, scaled by |S_i|+1:
/// q(A_{j*}(i)) + sum_{j in S_i} q(A_j(i)) - (|S_i|+1) p(A_{j*}(i))
///     <= sum_{j in S_i} (V_i(A_j(i)) - V_i(A_{j*}(i))).
/// Exactly one of p_vars / p_const is used.
inline void add_strong_bounds(lp::LinearProgram& prog, const Instance& inst, const Assignment& asg,
                              const PriceVars& q, std::size_t chosen, const Pattern& pattern,
                              const PriceVars* p_vars, const PriceMatrix* p_const, const std::string& tag) {
    for (std::size_t i = 0; i < inst.players(); ++i) {
        const std::size_t rc = asg.room(i, chosen);
        std::vector<lp::Term> terms{{q(chosen, rc), 1}};
        Money rhs = 0;
        long size = 0;
        for (std::size_t j = 0; j < inst.apartments(); ++j) {
            if (j == chosen || !pattern[i][j]) continue;
            ++size;
            terms.push_back({q(j, asg.room(i, j)), 1});
            rhs += inst.value(i, j, asg.room(i, j)) - inst.value(i, chosen, rc);
        }
        if (p_vars)
            terms.push_back({(*p_vars)(chosen, rc), Money(-(size + 1))});
        else
            rhs += Money(size + 1) * (*p_const)(chosen, rc);
        prog.add_constraint(std::move(terms), lp::Relation::LessEqual, rhs, tag + " strong " + std::to_string(i));
    }
}

}  // namespace rentdiv::detail
