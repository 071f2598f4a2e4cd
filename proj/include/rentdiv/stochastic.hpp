#pragma once

#include "rentdiv/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rentdiv::stochastic {

/**
 * SplitMix64. Trial t of a run with master seed s uses the stream seeded by
 * trial_seed(s, t) = mix(s ^ mix(t + 1)), so trials can run on any thread and
 * still reproduce bit for bit.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Dyadic rational k / 2^32, k uniform in [0, 2^32).
    Money uniform01();
    /// Exact Bernoulli(p) for rational p, decided against a 64-bit dyadic draw.
    bool bernoulli(const Money& p);

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

struct DistributionSpec {
    enum class Kind { Discrete, Uniform01, CorrelatedBernoulli };
    Kind kind = Kind::Uniform01;
    std::vector<Money> values;         // Discrete
    std::vector<Money> probabilities;  // Discrete
    Money r;                           // CorrelatedBernoulli: Pr(V_1 = V_2) per room

    static DistributionSpec discrete(std::vector<Money> values, std::vector<Money> probabilities);
    static DistributionSpec uniform01();
    static DistributionSpec correlated_bernoulli(Money r);

    /// Accepts "uniform01", "corr:<r>" and "discrete:<v1>,<v2>,...@<p1>,<p2>,...".
    static DistributionSpec parse(const std::string& text);
    std::string describe() const;
    /// Throws std::invalid_argument when the invariants fail.
    void validate() const;
};

/// Values drawn apartment by apartment, room by room, so the first m'
/// apartments of a draw with m > m' equal the draw with m'. Correlated
/// Bernoulli requires n == 2.
Instance sample_instance(std::size_t n, std::size_t m, const DistributionSpec& spec, const Money& rent,
                         std::uint64_t seed);

struct TrialReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::uint64_t seed = 0;
};

/// Wilson score interval at 95%.
TrialReport make_report(std::uint64_t trials, std::uint64_t successes, std::uint64_t seed);

/// Runs predicate(trial_seed(seed, t)) for t < trials on a thread pool and
/// counts successes; the result does not depend on the thread count.
TrialReport run_trials(std::uint64_t trials, std::uint64_t seed, const std::function<bool(std::uint64_t)>& predicate,
                       unsigned threads = 0);

TrialReport estimate_uef_prob(std::size_t n, std::size_t m, const DistributionSpec& spec, const Money& rent,
                              std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

TrialReport estimate_event_f_prob(std::size_t n, std::size_t m, const DistributionSpec& spec, const Money& rent,
                                  std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

/// Sum over rooms of the largest value any player has, minus the rent.
Money muw(const Instance& inst, std::size_t apartment);

/// Smallest apartment with the largest MUW.
std::size_t muw_argmax(const Instance& inst);

/// In the MUW-argmax apartment, the per-room top valuers can be chosen as
/// distinct players.
bool check_event_f(const Instance& inst);

/// Recognizer for the no-solution event: needs n >= 2 and m >= n + 1; with
/// apartments sorted by MUW, MUW is strictly decreasing, apartment n + 1 has
/// strictly the largest welfare, and the top n apartments can be matched to
/// distinct players who weakly top every room there. Used to generate
/// negative test cases.
bool check_event_e(const Instance& inst);

struct StoppingResult {
    std::optional<std::size_t> stopped_at;  // apartments in the instance when a solution appeared
    std::size_t apartments_drawn = 0;
    bool cap_hit() const { return !stopped_at; }
};

/// Adds apartments one at a time (reusing earlier draws) from m0 up to max_m
/// until solve_uef succeeds.
StoppingResult sequential_stopping(std::size_t n, const DistributionSpec& spec, const Money& rent, std::size_t m0,
                                   std::size_t max_m, std::uint64_t seed);

/// Probability that a universal envy-free solution exists for two players with
/// Bernoulli(1/2) values, Pr(V_1 = V_2) = r per room, m apartments of rent 1.
Money closed_form_uef_prob(std::size_t m, const Money& r);

/// For n == 2, binary values and unit rents: true iff the three events all
/// hold, which is exactly when no universal envy-free solution exists.
bool three_events_test(const Instance& inst);

std::string csv_header();
std::string csv_row(std::size_t n, std::size_t m, const DistributionSpec& spec, const TrialReport& report);

}  // namespace rentdiv::stochastic
