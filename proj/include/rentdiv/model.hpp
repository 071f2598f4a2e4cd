#pragma once

#include "rentdiv/money.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rentdiv {

/// values[i][j][k]: value of player i for room k of apartment j.
using ValueTensor = std::vector<std::vector<std::vector<Money>>>;

/**
 * A multi-apartment rent division instance: n players, m apartments of n rooms
 * each, one rent per apartment. Shapes are checked at construction; sign and
 * normalization conditions are reported by validate() instead, since random
 * and edited instances are allowed to break them.
 */
class Instance {
public:
    Instance(ValueTensor values, std::vector<Money> rents, bool normalized = false);

    std::size_t players() const { return values_.size(); }
    std::size_t apartments() const { return rents_.size(); }

    const Money& value(std::size_t player, std::size_t apartment, std::size_t room) const;
    const Money& rent(std::size_t apartment) const;
    const ValueTensor& values() const { return values_; }
    const std::vector<Money>& rents() const { return rents_; }
    bool normalized() const { return normalized_; }

    // Display metadata. Defaults are "p1..", "apt1..", "r11..".
    std::vector<std::string> player_names;
    std::vector<std::string> apartment_names;
    std::vector<std::vector<std::string>> room_names;

    /// Copy restricted to the listed apartments, in the given order.
    Instance select_apartments(const std::vector<std::size_t>& keep) const;
    /// Copy with one more apartment; extra[i][k] is player i's value for room k.
    Instance with_apartment(const std::vector<std::vector<Money>>& extra, const Money& rent,
                            std::string name = {}) const;
    Instance with_normalized(bool flag) const;

private:
    ValueTensor values_;
    std::vector<Money> rents_;
    bool normalized_;
};

/// perm[j][i] is the room player i gets in apartment j.
struct Assignment {
    std::vector<std::vector<std::size_t>> perm;

    std::size_t room(std::size_t player, std::size_t apartment) const;
    /// Player holding `room` in `apartment` (inverse permutation lookup).
    std::size_t occupant(std::size_t apartment, std::size_t room) const;
    bool operator==(const Assignment&) const = default;

    static Assignment identity(std::size_t players, std::size_t apartments);
};

/// p[j][k]: price of room k in apartment j.
struct PriceMatrix {
    std::vector<std::vector<Money>> p;

    const Money& operator()(std::size_t apartment, std::size_t room) const { return p.at(apartment).at(room); }
    Money& operator()(std::size_t apartment, std::size_t room) { return p.at(apartment).at(room); }
    bool operator==(const PriceMatrix&) const = default;

    /// Every room of apartment j priced at rents[j] / n.
    static PriceMatrix uniform(const Instance& inst);
};

struct PartialSolution {
    Assignment assignment;
    PriceMatrix prices;
};

struct Solution {
    PartialSolution partial;
    std::size_t chosen = 0;
};

/// e[i][i2][j]: gain of player i from taking player i2's room in apartment j
/// instead of its own room in the chosen apartment.
using EnvyMatrix = std::vector<std::vector<std::vector<Money>>>;

/// Throws std::invalid_argument unless asg and prices fit inst's shape and
/// every perm[j] is a bijection. Price row sums are not checked here.
void check_shapes(const Instance& inst, const Assignment& asg);
void check_shapes(const Instance& inst, const PriceMatrix& prices);
void check_shapes(const Instance& inst, const PartialSolution& partial);

/// True iff every price row sums to the apartment rent.
bool rows_match_rents(const Instance& inst, const PriceMatrix& prices);

/// Price that player i pays for its room in apartment j.
const Money& price_paid(const PartialSolution& partial, std::size_t player, std::size_t apartment);

/// V_i(A_j(i)) - P(A_j(i)).
Money utility(const Instance& inst, const PartialSolution& partial, std::size_t player,
              std::size_t apartment);

Money utility(const Instance& inst, const Assignment& asg, const PriceMatrix& prices, std::size_t player,
              std::size_t apartment);

/// Sum_i V_i(A_j(i)) - R_j.
Money welfare(const Instance& inst, const Assignment& asg, std::size_t apartment);

/// Sum over apartments of the prices player i pays (its "bundle" price).
Money bundle_price(const PartialSolution& partial, std::size_t player);

enum class ViolationKind { NegativeValue, NormalizationMismatch };

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Instance& inst);

EnvyMatrix envy_matrix(const Instance& inst, const Solution& sol);

}  // namespace rentdiv
