#include "rentdiv/io.hpp"

#include <algorithm>

namespace rentdiv::io {

namespace {

std::string at(const std::string& base, std::size_t index) { return base + "[" + std::to_string(index) + "]"; }
std::string dot(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

const Json& require(const Json& j, const std::string& base, const std::string& key) {
    if (!j.is_object()) throw ParseError(base.empty() ? "<root>" : base, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(dot(base, key), "missing field");
    return *it;
}

const Json& array_of(const Json& j, const std::string& field, std::optional<std::size_t> size = std::nullopt) {
    if (!j.is_array()) throw ParseError(field, "expected an array");
    if (size && j.size() != *size)
        throw ParseError(field, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
    return j;
}

std::size_t index_from_json(const Json& j, const std::string& field, std::size_t bound) {
    if (!j.is_number_integer()) throw ParseError(field, "expected an integer index");
    const auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= bound)
        throw ParseError(field, "index " + std::to_string(v) + " out of range (size " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
}

std::string name_from_json(const Json& j, const std::string& field) {
    if (!j.is_string()) throw ParseError(field, "expected a string");
    return j.get<std::string>();
}

Json money_list(const std::vector<Money>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(money_to_json(x));
    return out;
}

std::vector<Money> money_list_from_json(const Json& j, const std::string& field, std::size_t size) {
    array_of(j, field, size);
    std::vector<Money> out;
    for (std::size_t t = 0; t < size; ++t) out.push_back(money_from_json(j[t], at(field, t)));
    return out;
}

bool optional_present(const Json& j, const std::string& key) { return j.contains(key) && !j[key].is_null(); }

}  // namespace

ParseError::ParseError(std::string field, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error((line ? "line " + std::to_string(*line) + ": " : std::string()) +
                         (field.empty() ? message : field + ": " + message)),
      field_(std::move(field)),
      line_(line) {}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
        std::string what = e.what();
        if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw ParseError("", what, line);
    }
}

std::string money_to_json(const Money& m) { return format_money(m); }

Money money_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Money(mpz_class(j.dump()));
    if (j.is_number()) throw ParseError(field, "money values must be strings or integers, not binary floats");
    if (!j.is_string()) throw ParseError(field, "expected a money string");
    try {
        return parse_money(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(field, e.what());
    }
}

Json matrix_to_json(const PriceMatrix& p) {
    Json out = Json::array();
    for (const auto& row : p.p) out.push_back(money_list(row));
    return out;
}

PriceMatrix matrix_from_json(const Json& j, const std::string& field, std::size_t rows, std::size_t cols) {
    array_of(j, field, rows);
    PriceMatrix out;
    for (std::size_t r = 0; r < rows; ++r) out.p.push_back(money_list_from_json(j[r], at(field, r), cols));
    return out;
}

Json instance_to_json(const Instance& inst) {
    Json out;
    out["players"] = inst.player_names;
    Json apts = Json::array();
    for (std::size_t j = 0; j < inst.apartments(); ++j)
        apts.push_back({{"name", inst.apartment_names[j]},
                        {"rent", money_to_json(inst.rent(j))},
                        {"rooms", inst.room_names[j]}});
    out["apartments"] = std::move(apts);
    Json values = Json::array();
    for (const auto& player : inst.values()) {
        Json row = Json::array();
        for (const auto& apt : player) row.push_back(money_list(apt));
        values.push_back(std::move(row));
    }
    out["values"] = std::move(values);
    out["normalized"] = inst.normalized();
    return out;
}

Instance instance_from_json(const Json& j) {
    const Json& players = array_of(require(j, "", "players"), "players");
    const std::size_t n = players.size();
    if (n == 0) throw ParseError("players", "need at least one player");
    std::vector<std::string> player_names;
    for (std::size_t i = 0; i < n; ++i) player_names.push_back(name_from_json(players[i], at("players", i)));

    const Json& apts = array_of(require(j, "", "apartments"), "apartments");
    const std::size_t m = apts.size();
    if (m == 0) throw ParseError("apartments", "need at least one apartment");
    std::vector<Money> rents;
    std::vector<std::string> apt_names;
    std::vector<std::vector<std::string>> room_names;
    for (std::size_t a = 0; a < m; ++a) {
        const std::string base = at("apartments", a);
        rents.push_back(money_from_json(require(apts[a], base, "rent"), dot(base, "rent")));
        apt_names.push_back(apts[a].contains("name") ? name_from_json(apts[a]["name"], dot(base, "name"))
                                                     : "apt" + std::to_string(a + 1));
        std::vector<std::string> rooms;
        if (apts[a].contains("rooms")) {
            const Json& r = array_of(apts[a]["rooms"], dot(base, "rooms"), n);
            for (std::size_t k = 0; k < n; ++k) rooms.push_back(name_from_json(r[k], at(dot(base, "rooms"), k)));
        } else {
            for (std::size_t k = 0; k < n; ++k) rooms.push_back("r" + std::to_string(a + 1) + std::to_string(k + 1));
        }
        room_names.push_back(std::move(rooms));
    }

    const Json& values = array_of(require(j, "", "values"), "values", n);
    ValueTensor v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string base = at("values", i);
        array_of(values[i], base, m);
        for (std::size_t a = 0; a < m; ++a) v[i].push_back(money_list_from_json(values[i][a], at(base, a), n));
    }

    bool normalized = false;
    if (j.contains("normalized")) {
        if (!j["normalized"].is_boolean()) throw ParseError("normalized", "expected a boolean");
        normalized = j["normalized"].get<bool>();
    }
    Instance inst(std::move(v), std::move(rents), normalized);
    inst.player_names = std::move(player_names);
    inst.apartment_names = std::move(apt_names);
    inst.room_names = std::move(room_names);
    return inst;
}

Instance parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

Json ledger_to_json(const NegotiationLedger& ledger) {
    Json steps = Json::array();
    for (const auto& s : ledger.steps)
        steps.push_back({{"delta", money_to_json(s.delta)}, {"i1", s.i1}, {"i2", s.i2}, {"j1", s.j1}, {"j2", s.j2}});
    return {{"start", matrix_to_json(ledger.start)}, {"steps", std::move(steps)}, {"end", matrix_to_json(ledger.end)}};
}

NegotiationLedger ledger_from_json(const Json& j, const std::string& field, std::size_t n, std::size_t m) {
    NegotiationLedger out;
    out.start = matrix_from_json(require(j, field, "start"), dot(field, "start"), m, n);
    out.end = matrix_from_json(require(j, field, "end"), dot(field, "end"), m, n);
    const Json& steps = array_of(require(j, field, "steps"), dot(field, "steps"));
    for (std::size_t t = 0; t < steps.size(); ++t) {
        const std::string base = at(dot(field, "steps"), t);
        Negotiation s;
        s.delta = money_from_json(require(steps[t], base, "delta"), dot(base, "delta"));
        s.i1 = index_from_json(require(steps[t], base, "i1"), dot(base, "i1"), n);
        s.i2 = index_from_json(require(steps[t], base, "i2"), dot(base, "i2"), n);
        s.j1 = index_from_json(require(steps[t], base, "j1"), dot(base, "j1"), m);
        s.j2 = index_from_json(require(steps[t], base, "j2"), dot(base, "j2"), m);
        out.steps.push_back(s);
    }
    return out;
}

Json solution_to_json(const Instance& inst, const SolutionDocument& doc) {
    Json out = instance_to_json(inst);
    out["notion"] = doc.notion;
    out["objective"] = doc.objective;
    out["status"] = doc.solved() ? "solved" : "none exists";
    if (!doc.solved()) return out;
    const Solution& sol = *doc.solution;
    out["assignment"] = sol.partial.assignment.perm;
    out["prices"] = matrix_to_json(sol.partial.prices);
    out["chosen"] = sol.chosen;
    out["utilities"] = money_list(doc.utilities);
    out["objective_value"] = doc.objective_value ? Json(money_to_json(*doc.objective_value)) : Json(nullptr);
    out["witness_q"] = doc.witness_q ? matrix_to_json(*doc.witness_q) : Json(nullptr);
    out["ledger"] = doc.ledger ? ledger_to_json(*doc.ledger) : Json(nullptr);
    out["distribution"] = doc.distribution ? money_list(*doc.distribution) : Json(nullptr);
    return out;
}

SolutionDocument solution_from_json(const Json& j, const Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    SolutionDocument doc;
    if (!j.is_object()) throw ParseError("<root>", "expected an object");
    if (j.contains("notion")) doc.notion = name_from_json(j["notion"], "notion");
    if (j.contains("objective")) doc.objective = name_from_json(j["objective"], "objective");
    if (j.contains("status") && j["status"] == "none exists") return doc;

    Solution sol;
    const Json& perm = array_of(require(j, "", "assignment"), "assignment", m);
    for (std::size_t a = 0; a < m; ++a) {
        array_of(perm[a], at("assignment", a), n);
        std::vector<std::size_t> row;
        for (std::size_t i = 0; i < n; ++i) row.push_back(index_from_json(perm[a][i], at(at("assignment", a), i), n));
        sol.partial.assignment.perm.push_back(std::move(row));
    }
    try {
        check_shapes(inst, sol.partial.assignment);
    } catch (const std::invalid_argument& e) {
        throw ParseError("assignment", e.what());
    }
    sol.partial.prices = matrix_from_json(require(j, "", "prices"), "prices", m, n);
    sol.chosen = index_from_json(require(j, "", "chosen"), "chosen", m);
    doc.solution = std::move(sol);

    if (optional_present(j, "utilities")) doc.utilities = money_list_from_json(j["utilities"], "utilities", n);
    if (optional_present(j, "objective_value"))
        doc.objective_value = money_from_json(j["objective_value"], "objective_value");
    if (optional_present(j, "witness_q")) doc.witness_q = matrix_from_json(j["witness_q"], "witness_q", m, n);
    if (optional_present(j, "ledger")) doc.ledger = ledger_from_json(j["ledger"], "ledger", n, m);
    if (optional_present(j, "distribution"))
        doc.distribution = money_list_from_json(j["distribution"], "distribution", m);
    return doc;
}

SolutionDocument parse_solution(const std::string& text, const Instance& inst) {
    return solution_from_json(parse_json(text), inst);
}

}  // namespace rentdiv::io
