#pragma once

#include "rentdiv/model.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace testing_support {

using rentdiv::Instance;
using rentdiv::Money;

inline rentdiv::PriceMatrix prices(std::initializer_list<std::initializer_list<long>> rows) {
    rentdiv::PriceMatrix p;
    for (auto row : rows) {
        p.p.emplace_back();
        for (long x : row) p.p.back().emplace_back(x);
    }
    return p;
}

/// Integer values in [0, hi] (small ranges create ties), rents in [0, n*hi].
inline Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, long hi = 9) {
    std::uniform_int_distribution<long> val(0, hi), rent(0, static_cast<long>(n) * hi);
    rentdiv::ValueTensor v(n, std::vector<std::vector<Money>>(m, std::vector<Money>(n)));
    for (auto& a : v)
        for (auto& b : a)
            for (auto& x : b) x = Money(val(rng), 1 + val(rng) % 3);
    std::vector<Money> r(m);
    for (auto& x : r) x = rent(rng);
    return Instance(std::move(v), std::move(r));
}

/// Each player's values rescaled so that every total equals the rent total.
inline Instance random_normalized(std::mt19937_64& rng, std::size_t n, std::size_t m, long hi = 9) {
    Instance base = random_instance(rng, n, m, hi);
    auto v = base.values();
    Money rent_total = 0;
    for (const auto& r : base.rents()) rent_total += r;
    if (rent_total == 0) rent_total = 1;
    std::vector<Money> rents = base.rents();
    if (base.rents() == std::vector<Money>(m, Money(0))) rents[0] = 1;
    for (auto& player : v) {
        Money total = 0;
        for (const auto& apt : player)
            for (const auto& x : apt) total += x;
        if (total == 0) {
            player[0][0] = 1;
            total = 1;
        }
        for (auto& apt : player)
            for (auto& x : apt) {
                x = x * rent_total / total;
                x.canonicalize();
            }
    }
    return Instance(std::move(v), std::move(rents), true);
}

}  // namespace testing_support
