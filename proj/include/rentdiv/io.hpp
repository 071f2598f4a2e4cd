#pragma once

#include "rentdiv/fairness.hpp"
#include "rentdiv/model.hpp"
#include "rentdiv/negotiation.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace rentdiv::io {

using Json = nlohmann::ordered_json;

/// Malformed input. `field` is a JSON path such as "apartments[1].rent";
/// `line` is set for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& message, std::optional<std::size_t> line = std::nullopt);
    const std::string& field() const { return field_; }
    std::optional<std::size_t> line() const { return line_; }

private:
    std::string field_;
    std::optional<std::size_t> line_;
};

/// Parses JSON text, turning syntax errors into ParseError with a line number.
Json parse_json(const std::string& text);

std::string money_to_json(const Money& m);
/// Accepts decimal or "p/q" strings and JSON integers; rejects floats.
Money money_from_json(const Json& j, const std::string& field);

Json matrix_to_json(const PriceMatrix& p);
PriceMatrix matrix_from_json(const Json& j, const std::string& field, std::size_t rows, std::size_t cols);

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);
Instance parse_instance(const std::string& text);

Json ledger_to_json(const NegotiationLedger& ledger);
NegotiationLedger ledger_from_json(const Json& j, const std::string& field, std::size_t n, std::size_t m);

/// Everything a solve produces; `solution` is empty when none exists.
struct SolutionDocument {
    std::string notion;
    std::string objective = "none";
    std::optional<Solution> solution;
    std::vector<Money> utilities;
    std::optional<Money> objective_value;
    std::optional<PriceMatrix> witness_q;
    std::optional<NegotiationLedger> ledger;
    std::optional<std::vector<Money>> distribution;

    bool solved() const { return solution.has_value(); }
};

/// The instance fields followed by the solution fields.
Json solution_to_json(const Instance& inst, const SolutionDocument& doc);
/// Reads the solution fields, checking them against the instance's shape.
/// Only assignment, prices and chosen are required.
SolutionDocument solution_from_json(const Json& j, const Instance& inst);
SolutionDocument parse_solution(const std::string& text, const Instance& inst);

}  // namespace rentdiv::io
