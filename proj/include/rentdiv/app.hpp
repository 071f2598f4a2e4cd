#pragma once

#include "rentdiv/io.hpp"
#include "rentdiv/solvers.hpp"

#include <string>

namespace rentdiv::app {

enum class Notion { Uef, Nef, StrongNef, Def };
enum class ObjectiveKind { None, Maximin, Equitability };

/// "uef", "nef", "strong-nef", "def"; throws std::invalid_argument otherwise.
Notion parse_notion(const std::string& text);
std::string notion_name(Notion notion);
/// "none", "maximin", "equitability".
ObjectiveKind parse_objective(const std::string& text);
std::string objective_name(ObjectiveKind kind);

/**
 * Runs the solver for a notion. NEF and strong NEF include the witness Q and
 * the negotiation ledger from Q to the prices; objective "none" uses the
 * constructive algorithms. UEF and DEF ignore the objective.
 */
io::SolutionDocument solve(const Instance& inst, Notion notion, ObjectiveKind objective);

struct CheckReport {
    Certainty verdict = Certainty::Fails;
    std::string detail;
    std::optional<PriceMatrix> witness_q;

    io::Json to_json() const;
};

/// Verdict of the notion's checker on the document's solution. Throws
/// std::invalid_argument when the document has no solution, or for DEF when
/// it has no distribution.
CheckReport check(const Instance& inst, const io::SolutionDocument& doc, Notion notion);

}  // namespace rentdiv::app
