#include "rentdiv/model.hpp"

#include <stdexcept>

namespace rentdiv {

namespace {

void index_check(std::size_t index, std::size_t bound, const char* what) {
    if (index >= bound)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(index) +
                                " out of range (size " + std::to_string(bound) + ")");
}

void fill_default_names(Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    if (inst.player_names.size() != n) {
        inst.player_names.clear();
        for (std::size_t i = 0; i < n; ++i) inst.player_names.push_back("p" + std::to_string(i + 1));
    }
    if (inst.apartment_names.size() != m) {
        inst.apartment_names.clear();
        for (std::size_t j = 0; j < m; ++j) inst.apartment_names.push_back("apt" + std::to_string(j + 1));
    }
    bool rooms_ok = inst.room_names.size() == m;
    for (std::size_t j = 0; rooms_ok && j < m; ++j) rooms_ok = inst.room_names[j].size() == n;
    if (!rooms_ok) {
        inst.room_names.assign(m, {});
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                inst.room_names[j].push_back("r" + std::to_string(j + 1) + std::to_string(k + 1));
    }
}

}  // namespace

Instance::Instance(ValueTensor values, std::vector<Money> rents, bool normalized)
    : values_(std::move(values)), rents_(std::move(rents)), normalized_(normalized) {
    const std::size_t n = values_.size();
    const std::size_t m = rents_.size();
    if (n == 0) throw std::invalid_argument("instance needs at least one player");
    if (m == 0) throw std::invalid_argument("instance needs at least one apartment");
    for (std::size_t i = 0; i < n; ++i) {
        if (values_[i].size() != m)
            throw std::invalid_argument("values[" + std::to_string(i) + "] has " +
                                        std::to_string(values_[i].size()) + " apartments, expected " +
                                        std::to_string(m));
        for (std::size_t j = 0; j < m; ++j)
            if (values_[i][j].size() != n)
                throw std::invalid_argument("values[" + std::to_string(i) + "][" + std::to_string(j) +
                                            "] has " + std::to_string(values_[i][j].size()) +
                                            " rooms, expected " + std::to_string(n));
    }
    for (auto& player : values_)
        for (auto& apt : player)
            for (auto& v : apt) v.canonicalize();
    for (auto& r : rents_) r.canonicalize();
    fill_default_names(*this);
}

const Money& Instance::value(std::size_t player, std::size_t apartment, std::size_t room) const {
    index_check(player, players(), "player");
    index_check(apartment, apartments(), "apartment");
    index_check(room, players(), "room");
    return values_[player][apartment][room];
}

const Money& Instance::rent(std::size_t apartment) const {
    index_check(apartment, apartments(), "apartment");
    return rents_[apartment];
}

Instance Instance::select_apartments(const std::vector<std::size_t>& keep) const {
    ValueTensor v(players());
    std::vector<Money> r;
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> rooms;
    for (std::size_t j : keep) {
        index_check(j, apartments(), "apartment");
        for (std::size_t i = 0; i < players(); ++i) v[i].push_back(values_[i][j]);
        r.push_back(rents_[j]);
        names.push_back(apartment_names[j]);
        rooms.push_back(room_names[j]);
    }
    Instance out(std::move(v), std::move(r), normalized_);
    out.player_names = player_names;
    out.apartment_names = std::move(names);
    out.room_names = std::move(rooms);
    return out;
}

Instance Instance::with_apartment(const std::vector<std::vector<Money>>& extra, const Money& rent,
                                  std::string name) const {
    if (extra.size() != players()) throw std::invalid_argument("extra apartment needs one value row per player");
    ValueTensor v = values_;
    for (std::size_t i = 0; i < players(); ++i) {
        if (extra[i].size() != players())
            throw std::invalid_argument("extra apartment needs one value per room");
        v[i].push_back(extra[i]);
    }
    std::vector<Money> r = rents_;
    r.push_back(rent);
    Instance out(std::move(v), std::move(r), normalized_);
    out.player_names = player_names;
    out.apartment_names = apartment_names;
    out.apartment_names.push_back(name.empty() ? "apt" + std::to_string(apartments() + 1) : std::move(name));
    out.room_names = room_names;
    std::vector<std::string> rooms;
    for (std::size_t k = 0; k < players(); ++k)
        rooms.push_back("r" + std::to_string(apartments() + 1) + std::to_string(k + 1));
    out.room_names.push_back(std::move(rooms));
    return out;
}

Instance Instance::with_normalized(bool flag) const {
    Instance out = *this;
    out.normalized_ = flag;
    return out;
}

std::size_t Assignment::room(std::size_t player, std::size_t apartment) const {
    index_check(apartment, perm.size(), "apartment");
    index_check(player, perm[apartment].size(), "player");
    return perm[apartment][player];
}

std::size_t Assignment::occupant(std::size_t apartment, std::size_t room) const {
    index_check(apartment, perm.size(), "apartment");
    const auto& row = perm[apartment];
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] == room) return i;
    throw std::out_of_range("room " + std::to_string(room) + " is not assigned in apartment " +
                            std::to_string(apartment));
}

Assignment Assignment::identity(std::size_t players, std::size_t apartments) {
    Assignment a;
    a.perm.assign(apartments, std::vector<std::size_t>(players));
    for (auto& row : a.perm)
        for (std::size_t i = 0; i < players; ++i) row[i] = i;
    return a;
}

PriceMatrix PriceMatrix::uniform(const Instance& inst) {
    PriceMatrix out;
    const std::size_t n = inst.players();
    for (std::size_t j = 0; j < inst.apartments(); ++j)
        out.p.emplace_back(n, Money(inst.rent(j) / static_cast<long>(n)));
    return out;
}

void check_shapes(const Instance& inst, const Assignment& asg) {
    const std::size_t n = inst.players();
    if (asg.perm.size() != inst.apartments())
        throw std::invalid_argument("assignment covers " + std::to_string(asg.perm.size()) +
                                    " apartments, instance has " + std::to_string(inst.apartments()));
    for (std::size_t j = 0; j < asg.perm.size(); ++j) {
        if (asg.perm[j].size() != n)
            throw std::invalid_argument("assignment row " + std::to_string(j) + " has wrong length");
        std::vector<bool> seen(n, false);
        for (std::size_t room : asg.perm[j]) {
            if (room >= n || seen[room])
                throw std::invalid_argument("assignment row " + std::to_string(j) + " is not a bijection");
            seen[room] = true;
        }
    }
}

void check_shapes(const Instance& inst, const PriceMatrix& prices) {
    if (prices.p.size() != inst.apartments())
        throw std::invalid_argument("price matrix covers " + std::to_string(prices.p.size()) +
                                    " apartments, instance has " + std::to_string(inst.apartments()));
    for (std::size_t j = 0; j < prices.p.size(); ++j)
        if (prices.p[j].size() != inst.players())
            throw std::invalid_argument("price row " + std::to_string(j) + " has wrong length");
}

void check_shapes(const Instance& inst, const PartialSolution& partial) {
    check_shapes(inst, partial.assignment);
    check_shapes(inst, partial.prices);
}

bool rows_match_rents(const Instance& inst, const PriceMatrix& prices) {
    for (std::size_t j = 0; j < inst.apartments(); ++j) {
        Money sum = 0;
        for (const auto& price : prices.p.at(j)) sum += price;
        if (sum != inst.rent(j)) return false;
    }
    return true;
}

const Money& price_paid(const PartialSolution& partial, std::size_t player, std::size_t apartment) {
    return partial.prices(apartment, partial.assignment.room(player, apartment));
}

Money utility(const Instance& inst, const PartialSolution& partial, std::size_t player,
              std::size_t apartment) {
    const std::size_t room = partial.assignment.room(player, apartment);
    return inst.value(player, apartment, room) - partial.prices(apartment, room);
}

Money utility(const Instance& inst, const Assignment& asg, const PriceMatrix& prices, std::size_t player,
              std::size_t apartment) {
    const std::size_t room = asg.room(player, apartment);
    return inst.value(player, apartment, room) - prices(apartment, room);
}

Money welfare(const Instance& inst, const Assignment& asg, std::size_t apartment) {
    Money total = -inst.rent(apartment);
    for (std::size_t i = 0; i < inst.players(); ++i) total += inst.value(i, apartment, asg.room(i, apartment));
    return total;
}

Money bundle_price(const PartialSolution& partial, std::size_t player) {
    Money total = 0;
    for (std::size_t j = 0; j < partial.prices.p.size(); ++j) total += price_paid(partial, player, j);
    return total;
}

ValidationReport validate(const Instance& inst) {
    ValidationReport report;
    const std::size_t n = inst.players(), m = inst.apartments();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (inst.value(i, j, k) < 0)
                    report.violations.push_back(
                        {ViolationKind::NegativeValue,
                         "negative value for player " + std::to_string(i) + ", apartment " +
                             std::to_string(j) + ", room " + std::to_string(k) + ": " +
                             format_money(inst.value(i, j, k))});
    if (inst.normalized()) {
        Money rent_total = 0;
        for (std::size_t j = 0; j < m; ++j) rent_total += inst.rent(j);
        for (std::size_t i = 0; i < n; ++i) {
            Money total = 0;
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < n; ++k) total += inst.value(i, j, k);
            if (total != rent_total)
                report.violations.push_back({ViolationKind::NormalizationMismatch,
                                             "player " + std::to_string(i) + " total value " +
                                                 format_money(total) + " differs from total rent " +
                                                 format_money(rent_total)});
        }
    }
    return report;
}

EnvyMatrix envy_matrix(const Instance& inst, const Solution& sol) {
    check_shapes(inst, sol.partial);
    const std::size_t n = inst.players(), m = inst.apartments();
    if (sol.chosen >= m) throw std::out_of_range("chosen apartment out of range");
    EnvyMatrix e(n, std::vector<std::vector<Money>>(n, std::vector<Money>(m)));
    for (std::size_t i = 0; i < n; ++i) {
        const Money own = utility(inst, sol.partial, i, sol.chosen);
        for (std::size_t other = 0; other < n; ++other)
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t room = sol.partial.assignment.room(other, j);
                e[i][other][j] = inst.value(i, j, room) - sol.partial.prices(j, room) - own;
            }
    }
    return e;
}

}  // namespace rentdiv
