#pragma once

#include "rentdiv/model.hpp"

#include <vector>

namespace rentdiv {

using WeightMatrix = std::vector<std::vector<Money>>;

/// Hungarian algorithm on an n x n matrix; result[row] = column of a
/// maximum-weight perfect matching. Exact, no tie-break guarantee.
std::vector<std::size_t> hungarian_max(const WeightMatrix& w);

Money matching_weight(const WeightMatrix& w, const std::vector<std::size_t>& match);

/// Rank order in which rooms are preferred when breaking ties; empty means
/// natural order 0, 1, ..., n-1.
using RoomPriority = std::vector<std::size_t>;

/// Maximum-weight matching that is lexicographically smallest, comparing
/// player 0's room first, then player 1's, ..., rooms ranked by `priority`.
std::vector<std::size_t> lexmin_max_matching(const WeightMatrix& w, const RoomPriority& priority = {});

/// Welfare-maximizing bijection for apartment j (player -> room).
std::vector<std::size_t> max_weight_assignment(const Instance& inst, std::size_t j,
                                               const RoomPriority& priority = {});

/// max_weight_assignment applied to every apartment.
Assignment welfare_max_profile(const Instance& inst, const RoomPriority& priority = {});

/// Value matrix of apartment j: w[i][k] = V_i(r_jk).
WeightMatrix apartment_matrix(const Instance& inst, std::size_t j);

}  // namespace rentdiv
