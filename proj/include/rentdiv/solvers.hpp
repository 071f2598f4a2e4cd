#pragma once

#include "rentdiv/fairness.hpp"
#include "rentdiv/matching.hpp"
#include "rentdiv/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rentdiv {

/// f(u) = sum_i coeffs[i] * u_i + constant over the chosen-apartment utilities.
struct AffineFunction {
    std::vector<Money> coeffs;
    Money constant;
};

/// The solvers maximize the minimum of these functions.
using Objective = std::vector<AffineFunction>;

Objective maximin_objective(std::size_t players);
/// f_{i,i2} = u_i - u_i2 for i != i2 (a single zero function when n == 1).
Objective equitability_objective(std::size_t players);

Money evaluate(const Objective& objective, const std::vector<Money>& utilities);

/// Utilities of every player in the chosen apartment.
std::vector<Money> chosen_utilities(const Instance& inst, const Solution& sol);

struct SolveResult {
    Solution solution;
    std::optional<PriceMatrix> witness_q;
    std::optional<Money> objective_value;
};

/// First chosen apartment (in index order) admitting universal envy-free
/// prices under the welfare-maximizing assignment, or nullopt.
std::optional<SolveResult> solve_uef(const Instance& inst);

/// Same question answered by one direct price LP per chosen apartment; slow,
/// kept as an independent cross-check.
std::optional<SolveResult> solve_uef_direct(const Instance& inst);

SolveResult construct_nef(const Instance& inst);

/// Throws std::invalid_argument on an empty objective or wrong arity.
SolveResult optimize_nef(const Instance& inst, const Objective& objective, const RoomPriority& priority = {});

SolveResult solve_strong_nef(const Instance& inst);

SolveResult optimize_strong_nef(const Instance& inst, const Objective& objective);

struct DefSolveOptions {
    DefOptions check;
    std::size_t min_support = 1;
};

struct DefResult {
    Assignment assignment;
    PriceMatrix prices;
    std::vector<Money> distribution;
};

/// Supports are tried by size, then lexicographically, with the uniform
/// distribution on each. Throws std::invalid_argument when m > 12.
std::optional<DefResult> solve_def(const Instance& inst, const DefSolveOptions& options = {});

/// Apartments maximizing welfare under `asg`, ascending.
std::vector<std::size_t> welfare_argmax(const Instance& inst, const Assignment& asg);

}  // namespace rentdiv
