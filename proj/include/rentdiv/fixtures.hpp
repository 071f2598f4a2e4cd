#pragma once

#include "rentdiv/model.hpp"

namespace rentdiv::fixtures {

/// Two players, two apartments of rent 300; each player prefers a different apartment.
Instance example_two_apartments();

/// Two apartments of rent 100 where no universal envy-free solution exists.
Instance strong_negotiation_example();

/// Three players, two apartments of rent 300 (apartment monotonicity fails).
Instance monotonicity_example();

/// monotonicity_example() restricted to its first apartment.
Instance monotonicity_first_apartment();

/// Second apartment in which each player values a distinct room at the full rent 300.
std::vector<std::vector<Money>> monotonicity_alternative_apartment();

}  // namespace rentdiv::fixtures
