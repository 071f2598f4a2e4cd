#pragma once

#include "rentdiv/model.hpp"

#include <vector>

namespace rentdiv {

/// Player i1 pays delta more in apartment j1 and delta less in j2; player i2
/// does the opposite.
struct Negotiation {
    Money delta;
    std::size_t i1 = 0, i2 = 0, j1 = 0, j2 = 0;
    bool operator==(const Negotiation&) const = default;
};

struct NegotiationLedger {
    PriceMatrix start;
    std::vector<Negotiation> steps;
    PriceMatrix end;
};

/// Throws std::invalid_argument for delta <= 0, i1 == i2, j1 == j2 or bad indices.
PriceMatrix apply(const PriceMatrix& prices, const Assignment& asg, const Negotiation& t);

/// Applies every step of the ledger to its start matrix.
PriceMatrix replay(const NegotiationLedger& ledger, const Assignment& asg);

/// Negotiations turning Q into P, balancing each apartment against the last
/// one. Throws std::invalid_argument ("not reachable by negotiation") unless
/// Q and P have equal row sums and equal per-player totals.
NegotiationLedger reconstruct(const Assignment& asg, const PriceMatrix& q, const PriceMatrix& p);

struct ConsensusDelta {
    Money total;               // least total volume
    std::vector<Money> per_apartment;  // volume traded against each apartment
    NegotiationLedger ledger;  // empty steps when n == 1
};

/// Least total rent decrease of `player` in `chosen`, traded against the
/// other apartments, after which the player weakly prefers `chosen` to all.
ConsensusDelta min_consensus_delta(const Instance& inst, const PartialSolution& partial, std::size_t player,
                                   std::size_t chosen);

}  // namespace rentdiv
