#pragma once

#include "rentdiv/model.hpp"
#include "rentdiv/solvers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rentdiv {

struct ApartmentType {
    std::string name;
    Money rent;
    /// values[i][k]: player i's value for room k; the type's size is the room count.
    std::vector<std::vector<Money>> values;

    std::size_t size() const { return values.empty() ? 0 : values.front().size(); }
};

/// Apartment types available in unlimited copies; players may split across
/// several apartments.
struct TypedApartmentMarket {
    std::size_t players = 0;
    std::vector<ApartmentType> types;

    /// Throws std::invalid_argument on empty types or missing values.
    void validate() const;
};

/// Players as a bitmask (bit i = player i).
using Coalition = unsigned;

inline constexpr std::size_t kMaxCoalitionPlayers = 6;

/// Best total utility the coalition gets by renting apartments on its own:
/// every member gets a room, each rented apartment is fully occupied and
/// pays its rent. Exhaustive; throws std::invalid_argument beyond six players
/// and std::domain_error when no combination of sizes fits.
Money coalition_value(const TypedApartmentMarket& market, Coalition members);

/// v[S] for every S; v[0] = 0, nullopt where S cannot be housed exactly (such
/// a coalition has no deviation to offer).
std::vector<std::optional<Money>> coalition_table(const TypedApartmentMarket& market);

struct CoreResult {
    bool nonempty = false;
    std::vector<Money> alpha;  // a core utility vector when nonempty
    /// When empty: coalitions whose constraints form a minimal inconsistent
    /// system. The grand coalition stands for the equality constraint.
    std::vector<Coalition> conflict;
    std::vector<std::string> conflict_labels;
};

/// Throws std::domain_error if the grand coalition cannot be housed.
CoreResult core_check(const TypedApartmentMarket& market);

enum class Direction { Decreased, Unchanged, Increased };

struct MonotonicityProbe {
    Money before;
    Money after;
    Direction direction = Direction::Unchanged;
};

/// optimize_nef value before and after appending one apartment (extra[i][k]
/// per player and room). Throws std::invalid_argument if the instance is
/// flagged normalized and the extended one is not.
MonotonicityProbe monotonicity_probe(const Instance& inst, const std::vector<std::vector<Money>>& extra,
                                     const Money& rent, const Objective& objective);

std::string coalition_label(Coalition members);

namespace fixtures {
/// Three players; types of size 3, 2 and 1, all rent 0; the core is empty.
TypedApartmentMarket core_example();
}  // namespace fixtures

}  // namespace rentdiv
