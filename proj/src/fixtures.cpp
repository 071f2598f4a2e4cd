#include "rentdiv/fixtures.hpp"

namespace rentdiv::fixtures {

namespace {

std::vector<Money> row(std::initializer_list<long> xs) {
    std::vector<Money> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

Instance example_two_apartments() {
    ValueTensor v = {
        {row({200, 200}), row({100, 100})},
        {row({100, 100}), row({200, 200})},
    };
    return Instance(std::move(v), row({300, 300}));
}

Instance strong_negotiation_example() {
    ValueTensor v = {
        {row({100, 100}), row({0, 0})},
        {row({1, 1}), row({99, 99})},
    };
    return Instance(std::move(v), row({100, 100}));
}

Instance monotonicity_example() {
    ValueTensor v = {
        {row({150, 150, 0}), row({100, 100, 100})},
        {row({0, 150, 150}), row({300, 0, 0})},
        {row({75, 75, 150}), row({300, 0, 0})},
    };
    return Instance(std::move(v), row({300, 300}), true);
}

Instance monotonicity_first_apartment() { return monotonicity_example().select_apartments({0}); }

std::vector<std::vector<Money>> monotonicity_alternative_apartment() {
    return {row({300, 0, 0}), row({0, 300, 0}), row({0, 0, 300})};
}

}  // namespace rentdiv::fixtures
