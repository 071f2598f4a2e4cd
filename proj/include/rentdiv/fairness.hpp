#pragma once

#include "rentdiv/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rentdiv {

/// Player `envious` strictly prefers the room held by `envied` in `apartment`.
struct EnvyViolation {
    std::size_t envious;
    std::size_t envied;
    std::size_t apartment;
    bool operator==(const EnvyViolation&) const = default;
};

struct EnvyVerdict {
    bool holds = true;
    std::optional<EnvyViolation> violation;  // first in (i, i', j) order
    explicit operator bool() const { return holds; }
};

EnvyVerdict check_individually_ef(const Instance& inst, const PartialSolution& partial);

/// Apartments every player weakly prefers. Throws std::logic_error if the
/// set disagrees with the welfare-argmax characterization (cannot happen with
/// exact arithmetic).
std::vector<std::size_t> consensus_apartments(const Instance& inst, const PartialSolution& partial);

EnvyVerdict check_uef(const Instance& inst, const Solution& sol);

struct NefVerdict {
    bool holds = false;
    std::optional<PriceMatrix> witness;  // individually EF Q reaching P
    std::string reason;                  // empty when holds
    explicit operator bool() const { return holds; }
};

NefVerdict check_nef(const Instance& inst, const Solution& sol);

enum class Certainty { Holds, Fails, Unknown };

struct StrongNefVerdict {
    Certainty verdict = Certainty::Fails;
    std::optional<PriceMatrix> witness;
    std::string reason;
    bool holds() const { return verdict == Certainty::Holds; }
};

/// `hint` is tried first as the initial candidate Q.
StrongNefVerdict check_strong_nef(const Instance& inst, const Solution& sol,
                                  const std::optional<PriceMatrix>& hint = std::nullopt);

/// Set of apartments j with U_i(A_j, Q) > U_i(A_{j*}, Q).
std::vector<std::size_t> preferred_set(const Instance& inst, const Assignment& asg, const PriceMatrix& q,
                                       std::size_t player, std::size_t chosen);

/// Largest price decrease in the chosen apartment the strong bound allows
/// player i relative to Q.
Money strong_bound_slack(const Instance& inst, const Assignment& asg, const PriceMatrix& q, std::size_t player,
                         std::size_t chosen);

/// Per-apartment envy-free prices maximizing the least utility in that
/// apartment. Throws std::invalid_argument if some A_j is not
/// welfare-maximizing (no envy-free prices exist then).
PriceMatrix maximin_ef_prices(const Instance& inst, const Assignment& asg);

struct DefOptions {
    bool nonnegative_prices = false;
};

/// Throws std::invalid_argument unless dist is a probability vector of length m.
bool check_def(const Instance& inst, const Assignment& asg, const PriceMatrix& prices,
               const std::vector<Money>& dist, const DefOptions& options = {});

}  // namespace rentdiv
