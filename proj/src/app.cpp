#include "rentdiv/app.hpp"

#include <stdexcept>

namespace rentdiv::app {

namespace {

Objective objective_for(ObjectiveKind kind, std::size_t n) {
    return kind == ObjectiveKind::Equitability ? equitability_objective(n) : maximin_objective(n);
}

void fill_common(const Instance& inst, const SolveResult& r, io::SolutionDocument& doc) {
    doc.solution = r.solution;
    doc.utilities = chosen_utilities(inst, r.solution);
    doc.objective_value = r.objective_value;
    doc.witness_q = r.witness_q;
    if (r.witness_q) doc.ledger = reconstruct(r.solution.partial.assignment, *r.witness_q, r.solution.partial.prices);
}

std::string describe(const EnvyViolation& v) {
    return "player " + std::to_string(v.envious) + " envies player " + std::to_string(v.envied) + " in apartment " +
           std::to_string(v.apartment);
}

}  // namespace

Notion parse_notion(const std::string& text) {
    if (text == "uef") return Notion::Uef;
    if (text == "nef") return Notion::Nef;
    if (text == "strong-nef") return Notion::StrongNef;
    if (text == "def") return Notion::Def;
    throw std::invalid_argument("unknown notion '" + text + "' (expected uef, nef, strong-nef or def)");
}

std::string notion_name(Notion notion) {
    switch (notion) {
        case Notion::Uef: return "uef";
        case Notion::Nef: return "nef";
        case Notion::StrongNef: return "strong-nef";
        case Notion::Def: return "def";
    }
    return {};
}

ObjectiveKind parse_objective(const std::string& text) {
    if (text == "none") return ObjectiveKind::None;
    if (text == "maximin") return ObjectiveKind::Maximin;
    if (text == "equitability") return ObjectiveKind::Equitability;
    throw std::invalid_argument("unknown objective '" + text + "' (expected maximin, equitability or none)");
}

std::string objective_name(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::None: return "none";
        case ObjectiveKind::Maximin: return "maximin";
        case ObjectiveKind::Equitability: return "equitability";
    }
    return {};
}

io::SolutionDocument solve(const Instance& inst, Notion notion, ObjectiveKind objective) {
    io::SolutionDocument doc;
    doc.notion = notion_name(notion);
    doc.objective = objective_name(objective);
    const std::size_t n = inst.players();
    switch (notion) {
        case Notion::Uef:
            if (auto r = solve_uef(inst)) fill_common(inst, *r, doc);
            break;
        case Notion::Nef:
            fill_common(inst,
                        objective == ObjectiveKind::None ? construct_nef(inst)
                                                         : optimize_nef(inst, objective_for(objective, n)),
                        doc);
            break;
        case Notion::StrongNef:
            fill_common(inst,
                        objective == ObjectiveKind::None ? solve_strong_nef(inst)
                                                         : optimize_strong_nef(inst, objective_for(objective, n)),
                        doc);
            break;
        case Notion::Def:
            if (auto r = solve_def(inst)) {
                Solution sol{{r->assignment, r->prices}, 0};
                while (r->distribution[sol.chosen] == 0) ++sol.chosen;
                doc.solution = sol;
                doc.utilities = chosen_utilities(inst, sol);
                doc.distribution = r->distribution;
            }
            break;
    }
    return doc;
}

io::Json CheckReport::to_json() const {
    io::Json out;
    out["verdict"] = verdict == Certainty::Holds ? "holds" : verdict == Certainty::Fails ? "fails" : "unknown";
    out["detail"] = detail;
    out["witness_q"] = witness_q ? io::matrix_to_json(*witness_q) : io::Json(nullptr);
    return out;
}

CheckReport check(const Instance& inst, const io::SolutionDocument& doc, Notion notion) {
    if (!doc.solved()) throw std::invalid_argument("solution document has no solution to check");
    const Solution& sol = *doc.solution;
    check_shapes(inst, sol.partial);
    CheckReport report;
    auto from_bool = [](bool b) { return b ? Certainty::Holds : Certainty::Fails; };
    switch (notion) {
        case Notion::Uef: {
            auto v = check_uef(inst, sol);
            report.verdict = from_bool(v.holds);
            if (v.violation) report.detail = describe(*v.violation);
            else if (!v.holds) report.detail = "price rows do not match the rents";
            break;
        }
        case Notion::Nef: {
            auto v = check_nef(inst, sol);
            report.verdict = from_bool(v.holds);
            report.detail = v.reason;
            report.witness_q = v.witness;
            break;
        }
        case Notion::StrongNef: {
            auto v = check_strong_nef(inst, sol, doc.witness_q);
            report.verdict = v.verdict;
            report.detail = v.reason;
            report.witness_q = v.witness;
            break;
        }
        case Notion::Def:
            if (!doc.distribution) throw std::invalid_argument("def check needs a distribution");
            report.verdict =
                from_bool(check_def(inst, sol.partial.assignment, sol.partial.prices, *doc.distribution));
            if (report.verdict == Certainty::Fails) report.detail = "some player has positive expected envy";
            break;
    }
    return report;
}

}  // namespace rentdiv::app
