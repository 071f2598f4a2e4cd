#include "rentdiv/extensions.hpp"

#include "rentdiv/lp.hpp"
#include "rentdiv/matching.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace rentdiv {

namespace {

// Best way for `members` to fill one apartment of type t exactly.
Money fill(const ApartmentType& type, const std::vector<std::size_t>& members) {
    WeightMatrix w;
    for (std::size_t i : members) w.push_back(type.values[i]);
    return matching_weight(w, hungarian_max(w)) - type.rent;
}

class CoalitionSolver {
public:
    explicit CoalitionSolver(const TypedApartmentMarket& market) : market_(market) {}

    // nullopt when the members cannot be split into available sizes.
    std::optional<Money> best(Coalition members) {
        if (members == 0) return Money(0);
        if (auto it = memo_.find(members); it != memo_.end()) return it->second;
        std::optional<Money> result;
        const std::size_t lead = static_cast<std::size_t>(std::countr_zero(members));
        const Coalition rest = members & ~(Coalition{1} << lead);
        // Apartment holding the lowest-numbered member: the lead plus any
        // subset of the rest of the right size.
        for (Coalition sub = rest;; sub = (sub - 1) & rest) {
            const Coalition group = sub | (Coalition{1} << lead);
            const auto size = static_cast<std::size_t>(std::popcount(group));
            for (const auto& type : market_.types) {
                if (type.size() != size) continue;
                auto remainder = best(members & ~group);
                if (!remainder) continue;
                std::vector<std::size_t> ids;
                for (std::size_t i = 0; i < market_.players; ++i)
                    if (group >> i & 1u) ids.push_back(i);
                Money total = fill(type, ids) + *remainder;
                if (!result || total > *result) result = std::move(total);
            }
            if (sub == 0) break;
        }
        memo_[members] = result;
        return result;
    }

private:
    const TypedApartmentMarket& market_;
    std::map<Coalition, std::optional<Money>> memo_;
};

void check_scale(const TypedApartmentMarket& market) {
    market.validate();
    if (market.players > kMaxCoalitionPlayers)
        throw std::invalid_argument("coalition enumeration is limited to " + std::to_string(kMaxCoalitionPlayers) +
                                    " players");
}

std::vector<std::vector<Money>> square(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Money>> out;
    for (auto r : rows) {
        out.emplace_back();
        for (long x : r) out.back().emplace_back(x);
    }
    return out;
}

}  // namespace

void TypedApartmentMarket::validate() const {
    if (players == 0) throw std::invalid_argument("market needs at least one player");
    if (types.empty()) throw std::invalid_argument("market needs at least one apartment type");
    for (const auto& t : types) {
        if (t.values.size() != players)
            throw std::invalid_argument("type '" + t.name + "' needs one value row per player");
        if (t.size() == 0) throw std::invalid_argument("type '" + t.name + "' has no rooms");
        for (const auto& row : t.values)
            if (row.size() != t.size()) throw std::invalid_argument("type '" + t.name + "' has ragged value rows");
    }
}

std::string coalition_label(Coalition members) {
    std::string out = "{";
    for (std::size_t i = 0; members >> i; ++i)
        if (members >> i & 1u) out += (out.size() > 1 ? "," : "") + std::to_string(i + 1);
    return out + "}";
}

Money coalition_value(const TypedApartmentMarket& market, Coalition members) {
    check_scale(market);
    if (members >> market.players) throw std::invalid_argument("coalition names an unknown player");
    CoalitionSolver solver(market);
    auto v = solver.best(members);
    if (!v) throw std::domain_error("coalition " + coalition_label(members) + " cannot be housed exactly");
    return *v;
}

std::vector<std::optional<Money>> coalition_table(const TypedApartmentMarket& market) {
    check_scale(market);
    CoalitionSolver solver(market);
    const Coalition full = (Coalition{1} << market.players) - 1;
    std::vector<std::optional<Money>> table(full + 1);
    table[0] = Money(0);
    for (Coalition s = 1; s <= full; ++s) table[s] = solver.best(s);
    return table;
}

CoreResult core_check(const TypedApartmentMarket& market) {
    const auto v = coalition_table(market);
    const std::size_t n = market.players;
    const Coalition full = (Coalition{1} << n) - 1;
    if (!v[full]) throw std::domain_error("the players cannot be housed exactly by the available types");

    lp::LinearProgram prog;
    for (std::size_t i = 0; i < n; ++i) prog.add_variable("alpha" + std::to_string(i + 1));
    std::vector<Coalition> row_coalition;
    auto terms_of = [&](Coalition s) {
        std::vector<lp::Term> t;
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1u) t.push_back({i, Money(1)});
        return t;
    };
    prog.add_constraint(terms_of(full), lp::Relation::Equal, *v[full], "sum" + coalition_label(full) + " = v");
    row_coalition.push_back(full);
    for (Coalition s = 1; s < full; ++s) {
        if (!v[s]) continue;
        prog.add_constraint(terms_of(s), lp::Relation::GreaterEqual, *v[s], "sum" + coalition_label(s) + " >= v");
        row_coalition.push_back(s);
    }

    CoreResult result;
    const auto outcome = lp::solve(prog);
    if (outcome.optimal()) {
        result.nonempty = true;
        result.alpha = outcome.point;
        return result;
    }
    for (std::size_t row : lp::infeasible_subsystem(prog)) {
        result.conflict.push_back(row_coalition[row]);
        result.conflict_labels.push_back(prog.constraints()[row].label);
    }
    return result;
}

MonotonicityProbe monotonicity_probe(const Instance& inst, const std::vector<std::vector<Money>>& extra,
                                     const Money& rent, const Objective& objective) {
    const Instance extended = inst.with_apartment(extra, rent);
    if (inst.normalized())
        for (const auto& v : validate(extended).violations)
            if (v.kind == ViolationKind::NormalizationMismatch)
                throw std::invalid_argument("extra apartment breaks normalization: " + v.message);
    MonotonicityProbe probe;
    probe.before = *optimize_nef(inst, objective).objective_value;
    probe.after = *optimize_nef(extended, objective).objective_value;
    probe.direction = probe.after < probe.before   ? Direction::Decreased
                      : probe.after > probe.before ? Direction::Increased
                                                   : Direction::Unchanged;
    return probe;
}

namespace fixtures {

TypedApartmentMarket core_example() {
    TypedApartmentMarket m;
    m.players = 3;
    m.types.push_back({"three-room", 0, square({{340, 340, 340}, {-20, -20, -20}, {-20, -20, -20}})});
    m.types.push_back({"two-room", 0, square({{170, 170}, {170, 170}, {170, 170}})});
    m.types.push_back({"one-room", 0, square({{-1360}, {-280}, {-280}})});
    return m;
}

}  // namespace fixtures

}  // namespace rentdiv
